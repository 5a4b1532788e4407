#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modsym/problem.hpp"
#include "modsym/version.hpp"

namespace {

struct CliOptions {
  std::string problem_path;
  std::string out_path;
  std::string format = "json";
  std::vector<std::string> tol_overrides;
  std::optional<std::int64_t> seed;
};

int run_stage(const std::string& stage_name, const CliOptions& opt) {
  modsym::ProblemSpec spec = modsym::parse_problem(opt.problem_path);
  if (opt.seed) spec.seed = static_cast<std::uint64_t>(*opt.seed);
  for (const auto& ov : opt.tol_overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw modsym::DomainError("--tol expects <name>=<value>, got '" + ov + "'");
    const std::string name = ov.substr(0, eq);
    if (spec.tolerances.find(name) == spec.tolerances.end())
      throw modsym::DomainError("--tol: unknown tolerance '" + name + "'");
    spec.tolerances[name] = std::stod(ov.substr(eq + 1));
  }

  const modsym::RunReport report = modsym::run_pipeline(spec, modsym::stage_from_name(stage_name));
  const std::string text = opt.format == "json" ? report.to_json() : report.to_text();
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw modsym::Error("cannot write report to '" + opt.out_path + "'");
    out << text;
  }
  if (!report.hypotheses_ok) {
    std::cerr << "modsym: commuting-hypothesis check failed (exit 2); see report residuals\n";
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"modsym: find points whose moduli-space class is fixed by a symmetry group"};
  app.set_version_flag("--version", modsym::kVersion);
  app.require_subcommand(1);

  CliOptions opt;
  std::string invoked;
  const std::vector<std::pair<std::string, std::string>> stages = {
      {"check", "validate the problem and run the hypothesis checks only"},
      {"homs", "also enumerate candidate homomorphisms rho"},
      {"solve", "also compute the symmetric subspace per candidate"},
      {"verify", "also verify each reported point (exp paths, orbits, components)"},
      {"stabilizer", "also compute stabilizer subalgebras"},
      {"all", "full pipeline (same as stabilizer)"},
  };
  for (const auto& [name, desc] : stages) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("problem", opt.problem_path, "problem file (JSON)")->required();
    sub->add_option("--seed", opt.seed, "override the problem seed");
    sub->add_option("--tol", opt.tol_overrides, "override a named tolerance, <name>=<value>")
        ->take_all();
    sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->callback([&invoked, name = name] { invoked = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 64;
  }

  try {
    return run_stage(invoked, opt);
  } catch (const modsym::Error& e) {
    std::cerr << "modsym: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "modsym: " << e.what() << "\n";
    return 1;
  }
}
