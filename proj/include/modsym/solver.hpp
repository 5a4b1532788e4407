#ifndef MODSYM_SOLVER_HPP
#define MODSYM_SOLVER_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modsym/actions.hpp"
#include "modsym/homs.hpp"

namespace modsym {

/// Solution set of the linear symmetry criterion for a fixed candidate rho:
/// {A : D_i A = 0 for all i} with D_i = L_S(x_i) + L_G(rho(x_i)).
struct SymmetricSubspace {
  HomCandidate rho;
  Eigen::MatrixXd basis;           ///< m x k, orthonormal columns
  double residual = 0.0;           ///< max_i max_v ||D_i v||
  double gap_ratio = 0.0;          ///< largest discarded / smallest kept singular value
  Eigen::VectorXd singular_values; ///< of the stacked operator, descending
  std::vector<std::string> warnings;
  std::string note; ///< trivial-solution annotation (see trivial_solution_filter)

  int dim() const { return static_cast<int>(basis.cols()); }
  Eigen::MatrixXd projector() const;
};

/// Stabilizer subalgebra of a point: {x in Lie(S) : L_S(x)A lies in the
/// image of y -> L_G(y)A}, with one minimum-norm witness y per basis vector.
struct StabilizerAlgebra {
  PointA point;
  Eigen::MatrixXd basis; ///< dim(S) x k, orthonormal columns in Lie(S) coords
  std::vector<Eigen::VectorXd> witnesses;
  std::vector<double> witness_residuals; ///< ||L_S(x)A + L_G(y)A|| per basis vector
  double bracket_residual = 0.0;         ///< max deviation of pair brackets from the span
  double gap_ratio = 0.0;
  std::vector<std::string> warnings;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Stacked operators D_i, one per source basis element (used by tests and
/// the brute-force oracle as well as the solver itself).
std::vector<Eigen::MatrixXd> criterion_operators(const LinearAction& act_s,
                                                 const LinearAction& act_g,
                                                 const HomCandidate& rho);

/// Common nullspace of the D_i by SVD of the stacked (dim(S)*m) x m matrix.
/// The rank cut is relative (tol * sigma_max) with the gap ratio reported;
/// an unclear decision (gap_ratio > 0.1) attaches a warning, never throws.
/// A = 0 always solves the criterion and is reported via the annotation,
/// not the basis.
SymmetricSubspace solve_symmetric(const LinearAction& act_s, const LinearAction& act_g,
                                  const HomCandidate& rho, double tol);

/// Stabilizer of A from the joint nullspace of [B_S | B_G], columns
/// L_S(x_i)A and L_G(e_j)A, projected to Lie(S) and orthonormalized.
StabilizerAlgebra stabilizer_algebra(const LinearAction& act_s, const LinearAction& act_g,
                                     const PointA& A, double tol);

/// Annotates (never deletes): 0 is always a solution; current policy flags
/// no basis direction. The annotation text is stable across runs.
SymmetricSubspace trivial_solution_filter(SymmetricSubspace sub, double threshold);

} // namespace modsym

#endif
