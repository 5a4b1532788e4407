#ifndef MODSYM_VERSION_HPP
#define MODSYM_VERSION_HPP

namespace modsym {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportVersion = "1";
} // namespace modsym

#endif
