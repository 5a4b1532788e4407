// Test-only oracles, kept independent of the implementation paths they check.
#ifndef MODSYM_TESTS_ORACLES_HPP
#define MODSYM_TESTS_ORACLES_HPP

#include <vector>

#include <Eigen/Dense>

#include "modsym/actions.hpp"
#include "modsym/lie.hpp"

namespace oracles {

// Partition count via Euler's pentagonal recurrence (the implementation
// enumerates by descending-part recursion; this shares nothing with it).
inline long long partition_count(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long long s = 0;
    for (int k = 1;; ++k) {
      const long long g1 = static_cast<long long>(k) * (3 * k - 1) / 2;
      const long long g2 = static_cast<long long>(k) * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      const long long sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= m) s += sign * p[m - g1];
      if (g2 <= m) s += sign * p[m - g2];
    }
    p[m] = s;
  }
  return p[n];
}

// Kelleher's accelAsc: partitions in ascending-part order.
inline std::vector<std::vector<int>> partitions_ascending(int n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  std::vector<int> a(n + 1, 0);
  int k = 1;
  a[1] = n;
  while (k != 0) {
    int x = a[k - 1] + 1;
    int y = a[k] - 1;
    --k;
    while (x <= y) {
      a[k] = x;
      y -= x;
      ++k;
    }
    a[k] = x + y;
    out.emplace_back(a.begin(), a.begin() + k + 1);
  }
  return out;
}

// Brute-force kernel hull: scan integer grid directions, keep those
// annihilated by every operator, orthonormalize by modified Gram-Schmidt.
inline Eigen::MatrixXd grid_scan_hull(const std::vector<Eigen::MatrixXd>& ops, int m,
                                      int grid_radius, double keep_tol = 1e-6) {
  std::vector<Eigen::VectorXd> kept;
  Eigen::VectorXi idx = Eigen::VectorXi::Constant(m, -grid_radius);
  while (true) {
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v(i) = idx(i);
    if (v.norm() > 0) {
      v /= v.norm();
      double worst = 0;
      for (const auto& d : ops) worst = std::max(worst, (d * v).norm());
      if (worst < keep_tol) kept.push_back(v);
    }
    int pos = m - 1;
    while (pos >= 0 && ++idx(pos) > grid_radius) idx(pos--) = -grid_radius;
    if (pos < 0) break;
  }
  // modified Gram-Schmidt
  std::vector<Eigen::VectorXd> basis;
  for (auto v : kept) {
    for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-8) basis.push_back(v / v.norm());
  }
  Eigen::MatrixXd out(m, static_cast<int>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) out.col(static_cast<int>(i)) = basis[i];
  return out;
}

// Difference quotient of the group action, the oracle for act_alg.
inline Eigen::VectorXd finite_difference_action(const modsym::LinearAction& act,
                                                const modsym::AlgebraElement& y,
                                                const modsym::PointA& A, double eps) {
  const Eigen::MatrixXd g = modsym::matrix_exp(eps * y.matrix());
  return (modsym::act_group(act, g, A).coords - A.coords) / eps;
}

} // namespace oracles

#endif
