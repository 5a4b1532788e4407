#include "modsym/homs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modsym/linalg.hpp"

namespace modsym {

AlgebraElement HomCandidate::image_of_basis(int i) const {
  return AlgebraElement{target, matrix.col(i)};
}

AlgebraElement HomCandidate::image(const AlgebraElement& x) const {
  if (!x.algebra->same_algebra(*source))
    throw DomainError("HomCandidate::image: element from a different source algebra");
  return AlgebraElement{target, matrix * x.coords};
}

double HomCandidate::hom_residual() const {
  const int ds = source->dim();
  double worst = 0.0;
  for (int i = 0; i < ds; ++i)
    for (int j = i + 1; j < ds; ++j) {
      const Eigen::VectorXd lhs = matrix * source->bracket_coords(Eigen::VectorXd::Unit(ds, i),
                                                                  Eigen::VectorXd::Unit(ds, j));
      const Eigen::VectorXd rhs = target->bracket_coords(matrix.col(i), matrix.col(j));
      worst = std::max(worst, target->matrix_of(lhs - rhs).norm());
    }
  return worst;
}

HomCandidate make_candidate(AlgebraPtr source, AlgebraPtr target, Eigen::MatrixXd matrix,
                            std::string label, double hom_tol) {
  if (!source || !target) throw DomainError("make_candidate: null algebra");
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw DomainError("make_candidate: matrix must be dim(G) x dim(S)");
  HomCandidate cand{std::move(source), std::move(target), std::move(matrix), std::move(label)};
  if (!cand.vacuously_hom() && cand.hom_residual() > hom_tol)
    throw NumericalError("candidate '" + cand.label + "' is not a Lie algebra homomorphism " +
                         "(residual " + std::to_string(cand.hom_residual()) + ")");
  return cand;
}

std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // descending-part recursion
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  if (n < 0) throw DomainError("integer_partitions: n must be nonnegative");
  rec(rec, n, n);
  return out;
}

namespace {

std::string partition_label(const std::vector<int>& parts) {
  std::ostringstream os;
  os << "partition:";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
  return os.str();
}

std::string grid_label(const Eigen::VectorXd& coeffs) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (i) os << ",";
    const double c = coeffs(i);
    if (c == std::floor(c) && std::abs(c) < 1e15)
      os << static_cast<long long>(c);
    else
      os << c;
  }
  os << ")";
  return os.str();
}

} // namespace

std::vector<HomCandidate> enumerate_su2_to_un(int n) {
  if (n < 1 || n > 8) throw DomainError("enumerate_su2_to_un: requires 1 <= n <= 8");
  const AlgebraPtr su2 = builtin_algebra("su(2)");
  const AlgebraPtr un = builtin_algebra("u(" + std::to_string(n) + ")");

  std::vector<HomCandidate> out;
  for (const auto& parts : integer_partitions(n)) {
    Eigen::MatrixXd mat(un->dim(), 3);
    for (int k = 0; k < 3; ++k) {
      Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(n, n);
      int off = 0;
      for (int p : parts) {
        image.block(off, off, p, p) = spin_irrep_complex(p - 1)[k];
        off += p;
      }
      mat.col(k) = un->coords_of(realify(image));
    }
    out.push_back(make_candidate(su2, un, mat, partition_label(parts)));
  }
  return out;
}

namespace {

// Grid of coefficient vectors over the designated abelian subalgebra.
std::vector<Eigen::VectorXd> cartan_grid(const AlgebraPtr& target, const AbelianStrategy& st) {
  if (st.cartan.empty())
    throw DomainError("candidate strategy: empty cartan generator list");
  for (int idx : st.cartan)
    if (idx < 0 || idx >= target->dim())
      throw DomainError("candidate strategy: cartan index out of range");
  // the designated generators must pairwise commute
  const int nc = static_cast<int>(st.cartan.size());
  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      const Eigen::VectorXd br =
          target->bracket_coords(Eigen::VectorXd::Unit(target->dim(), st.cartan[a]),
                                 Eigen::VectorXd::Unit(target->dim(), st.cartan[b]));
      if (target->matrix_of(br).norm() > 1e-9)
        throw DomainError("candidate strategy: designated cartan generators do not commute");
    }
  if (st.ranges.size() != st.cartan.size())
    throw DomainError("candidate strategy: one range per cartan generator required");
  const double step = st.kind == AbelianStrategy::Kind::IntegerWeights ? 1.0 : st.step;
  if (!(step > 0.0)) throw DomainError("candidate strategy: step must be positive");

  std::vector<std::vector<double>> axes;
  for (auto [lo, hi] : st.ranges) {
    if (hi < lo) throw DomainError("candidate strategy: empty range");
    std::vector<double> axis;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) axis.push_back(lo + i * step);
    axes.push_back(std::move(axis));
  }

  std::vector<Eigen::VectorXd> grid;
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    Eigen::VectorXd c(axes.size());
    for (size_t i = 0; i < axes.size(); ++i) c(i) = axes[i][idx[i]];
    grid.push_back(c);
    size_t pos = axes.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < axes[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return grid;
    }
  }
}

Eigen::VectorXd cartan_combination(const AlgebraPtr& target, const std::vector<int>& cartan,
                                   const Eigen::VectorXd& coeffs) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(target->dim());
  for (size_t i = 0; i < cartan.size(); ++i) v(cartan[i]) += coeffs(i);
  return v;
}

} // namespace

std::vector<HomCandidate> onedim_candidates(AlgebraPtr source, AlgebraPtr target,
                                            const AbelianStrategy& strategy) {
  if (source->dim() != 1)
    throw DomainError("onedim_candidates: source must be one-dimensional");
  return abelian_candidates(std::move(source), std::move(target), strategy);
}

std::vector<HomCandidate> abelian_candidates(AlgebraPtr source, AlgebraPtr target,
                                             const AbelianStrategy& strategy) {
  const int ds = source->dim();
  for (int k = 0; k < ds; ++k)
    if (source->structure_slice(k).cwiseAbs().maxCoeff() != 0.0)
      throw DomainError("abelian_candidates: source algebra is not abelian");

  std::vector<HomCandidate> out;
  if (strategy.kind == AbelianStrategy::Kind::UserList) {
    if (strategy.user.empty()) throw DomainError("candidate strategy: empty user list");
    int idx = 0;
    for (const auto& m : strategy.user) {
      if (m.rows() != target->dim() || m.cols() != ds)
        throw DomainError("candidate strategy: user candidate must be dim(G) x dim(S)");
      out.push_back(make_candidate(source, target, m, "user:" + std::to_string(idx++)));
    }
    return out;
  }

  const auto grid = cartan_grid(target, strategy);
  const char* prefix =
      strategy.kind == AbelianStrategy::Kind::IntegerWeights ? "weights:" : "grid:";
  if (ds == 1) {
    for (const auto& coeffs : grid) {
      Eigen::MatrixXd m(target->dim(), 1);
      m.col(0) = cartan_combination(target, strategy.cartan, coeffs);
      out.push_back(make_candidate(source, target, m, prefix + grid_label(coeffs)));
    }
    return out;
  }

  // torus(k) source: one grid point per source generator; all images live in
  // the designated abelian subalgebra, so the tuple commutes by construction.
  std::vector<size_t> pick(ds, 0);
  while (true) {
    Eigen::MatrixXd m(target->dim(), ds);
    std::string label = prefix;
    for (int j = 0; j < ds; ++j) {
      m.col(j) = cartan_combination(target, strategy.cartan, grid[pick[j]]);
      label += (j ? "x" : "") + grid_label(grid[pick[j]]);
    }
    out.push_back(make_candidate(source, target, m, label));
    int pos = ds;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < grid.size()) break;
      pick[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

HomCandidate conjugate_candidate(const HomCandidate& rho, const Eigen::MatrixXd& g) {
  Eigen::MatrixXd m(rho.target->dim(), rho.source->dim());
  for (int i = 0; i < rho.source->dim(); ++i)
    m.col(i) = adjoint(g, rho.image_of_basis(i)).coords;
  // conjugation by an automorphism preserves the property up to roundoff
  return make_candidate(rho.source, rho.target, m, rho.label + "~Ad",
                        std::max(1e-9, 10.0 * rho.hom_residual() + 1e-12));
}

} // namespace modsym
