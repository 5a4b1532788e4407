#include "modsym/solver.hpp"

#include <algorithm>
#include <cmath>

#include "modsym/linalg.hpp"

namespace modsym {

Eigen::MatrixXd SymmetricSubspace::projector() const {
  return modsym::projector(basis, basis.rows());
}

std::vector<Eigen::MatrixXd> criterion_operators(const LinearAction& act_s,
                                                 const LinearAction& act_g,
                                                 const HomCandidate& rho) {
  if (!act_s.space()->same_space(*act_g.space()))
    throw DomainError("criterion_operators: actions live on different spaces");
  if (!rho.source->same_algebra(*act_s.algebra()))
    throw DomainError("criterion_operators: rho source does not match the symmetry algebra");
  if (!rho.target->same_algebra(*act_g.algebra()))
    throw DomainError("criterion_operators: rho target does not match the gauge algebra");

  const int ds = rho.source->dim();
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(ds);
  for (int i = 0; i < ds; ++i) {
    Eigen::MatrixXd d = act_s.generator_op(i);
    const Eigen::VectorXd img = rho.matrix.col(i);
    for (int j = 0; j < rho.target->dim(); ++j)
      if (img(j) != 0.0) d += img(j) * act_g.generator_op(j);
    ops.push_back(std::move(d));
  }
  return ops;
}

SymmetricSubspace solve_symmetric(const LinearAction& act_s, const LinearAction& act_g,
                                  const HomCandidate& rho, double tol) {
  const auto ops = criterion_operators(act_s, act_g, rho);
  const int m = act_s.space()->dim();
  const int ds = static_cast<int>(ops.size());

  Eigen::MatrixXd stacked(ds * m, m);
  for (int i = 0; i < ds; ++i) stacked.middleRows(i * m, m) = ops[i];

  const NullspaceResult ns = nullspace(stacked, tol);

  SymmetricSubspace sub;
  sub.rho = rho;
  sub.basis = ns.basis;
  sub.gap_ratio = ns.gap_ratio;
  sub.singular_values = ns.singular_values;
  for (int v = 0; v < sub.dim(); ++v)
    for (const auto& d : ops)
      sub.residual = std::max(sub.residual, (d * sub.basis.col(v)).norm());
  if (ns.gap_ratio > 0.1)
    sub.warnings.push_back("ill-conditioned rank decision (gap ratio " +
                           std::to_string(ns.gap_ratio) + ")");
  return sub;
}

StabilizerAlgebra stabilizer_algebra(const LinearAction& act_s, const LinearAction& act_g,
                                     const PointA& A, double tol) {
  if (!act_s.space()->same_space(*act_g.space()))
    throw DomainError("stabilizer_algebra: actions live on different spaces");
  if (!A.space->same_space(*act_s.space()))
    throw DomainError("stabilizer_algebra: point lives on a different space");

  const int m = A.space->dim();
  const int ds = act_s.algebra()->dim();
  const int dg = act_g.algebra()->dim();

  Eigen::MatrixXd bs(m, ds), bg(m, dg);
  for (int i = 0; i < ds; ++i) bs.col(i) = act_s.generator_op(i) * A.coords;
  for (int j = 0; j < dg; ++j) bg.col(j) = act_g.generator_op(j) * A.coords;

  Eigen::MatrixXd joint(m, ds + dg);
  joint.leftCols(ds) = bs;
  joint.rightCols(dg) = bg;

  const NullspaceResult ns = nullspace(joint, tol);

  StabilizerAlgebra st;
  st.point = A;
  st.gap_ratio = ns.gap_ratio;
  if (ns.gap_ratio > 0.1)
    st.warnings.push_back("ill-conditioned rank decision (gap ratio " +
                          std::to_string(ns.gap_ratio) + ")");

  // Lie(S) components of the joint kernel span the stabilizer subalgebra.
  st.basis = span_basis(ns.basis.topRows(ds), 1e-10);

  for (int v = 0; v < st.dim(); ++v) {
    const Eigen::VectorXd x = st.basis.col(v);
    const Eigen::VectorXd rhs = -(bs * x);
    const Eigen::VectorXd y = min_norm_solve(bg, rhs);
    st.witnesses.push_back(y);
    st.witness_residuals.push_back((bs * x + bg * y).norm());
  }

  // Bracket closure: [x_a, x_b] must stay inside the computed span.
  const Eigen::MatrixXd proj = projector(st.basis, ds);
  for (int a = 0; a < st.dim(); ++a)
    for (int b = a + 1; b < st.dim(); ++b) {
      const Eigen::VectorXd br =
          act_s.algebra()->bracket_coords(st.basis.col(a), st.basis.col(b));
      st.bracket_residual = std::max(st.bracket_residual, (br - proj * br).norm());
    }
  return st;
}

SymmetricSubspace trivial_solution_filter(SymmetricSubspace sub, double /*threshold*/) {
  // Current policy: flag nothing; only record that the zero point always
  // satisfies the criterion. Deleting directions here would hide solutions.
  sub.note = "A = 0 is always a solution of the symmetry criterion and is "
             "reported implicitly; the basis lists nontrivial directions only.";
  return sub;
}

} // namespace modsym
