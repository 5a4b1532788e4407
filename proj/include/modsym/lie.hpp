#ifndef MODSYM_LIE_HPP
#define MODSYM_LIE_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modsym/error.hpp"

namespace modsym {

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Construction-validation tolerances for LieAlgebra.
struct AlgebraTolerances {
  double jacobi = 1e-10;
  double bracket = 1e-10;
};

/// A finite-dimensional real matrix Lie algebra: a basis of ambient real
/// matrices together with its structure constants. Complex algebras (u(n),
/// su(n), torus) are stored through the [[Re,-Im],[Im,Re]] real embedding so
/// every downstream computation stays in one real numeric tower.
///
/// Construction validates, and throws NumericalError on failure:
///  - basis linear independence (trace Gram matrix nonsingular),
///  - stored structure constants antisymmetric in (i,j) exactly as stored,
///  - matrix brackets reproduce the structure constants (<= bracket_tol),
///  - the Jacobi identity in structure-constant form (<= jacobi_tol).
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
public:
  /// Structure constants are computed from the matrix brackets.
  LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis,
             bool complex_embedded = false, AlgebraTolerances tol = {});

  /// User-supplied structure constants, validated against the basis.
  LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis,
             const std::vector<Eigen::MatrixXd>& structure, bool complex_embedded = false,
             AlgebraTolerances tol = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  /// Side length of the real ambient matrices (2n for complex-embedded).
  int ambient() const { return ambient_; }
  bool complex_embedded() const { return complex_embedded_; }

  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }
  const Eigen::MatrixXd& basis_element(int i) const { return basis_.at(i); }

  /// c_{ijk} with [e_i, e_j] = sum_k c_{ijk} e_k.
  double structure(int i, int j, int k) const { return structure_[k](i, j); }
  /// Slice k of the structure tensor, indexed (i, j).
  const Eigen::MatrixXd& structure_slice(int k) const { return structure_.at(k); }

  /// Coordinates of an ambient matrix in the stored basis; throws
  /// NumericalError when the matrix is outside the span (relative
  /// residual > span_tol).
  Eigen::VectorXd coords_of(const Eigen::MatrixXd& m, double span_tol = 1e-8) const;

  /// Ambient matrix with the given coordinates.
  Eigen::MatrixXd matrix_of(const Eigen::VectorXd& coords) const;

  /// Bracket in coordinates through the structure constants.
  Eigen::VectorXd bracket_coords(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  bool same_algebra(const LieAlgebra& other) const {
    return name_ == other.name_ && dim() == other.dim() && ambient_ == other.ambient_;
  }

private:
  void validate(Tolerances tol) const;

  std::string name_;
  std::vector<Eigen::MatrixXd> basis_;
  std::vector<Eigen::MatrixXd> structure_; // structure_[k](i,j) = c_{ijk}
  Eigen::MatrixXd gram_;                   // trace Gram matrix of the basis
  Eigen::LDLT<Eigen::MatrixXd> gram_solver_;
  int ambient_ = 0;
  bool complex_embedded_ = false;
};

/// An element of a LieAlgebra in basis coordinates.
struct AlgebraElement {
  AlgebraPtr algebra;
  Eigen::VectorXd coords;

  Eigen::MatrixXd matrix() const { return algebra->matrix_of(coords); }
  double norm() const { return coords.norm(); }
};

AlgebraElement element(AlgebraPtr algebra, const Eigen::VectorXd& coords);

/// Lie bracket [a, b]; both elements must belong to the same algebra.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

/// Matrix exponential by scaling and squaring of a truncated series.
/// Contract: ||result - exp(m)|| <= tol * e^{||m||}.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m, double tol = 1e-13);

/// Adjoint action Ad_g(a) = g a g^{-1}, in coordinates. g must normalize the
/// algebra; otherwise a NumericalError ("not in normalizer") is raised.
AlgebraElement adjoint(const Eigen::MatrixXd& g, const AlgebraElement& a, double span_tol = 1e-8);

/// Catalog of built-in algebras. Keys: u(n), su(n), so(n) with n <= 8,
/// torus(k) with k <= 4, circle (= torus(1)), r or line (the real line).
/// Canonical bases are documented in docs/problem_format.md.
AlgebraPtr builtin_algebra(const std::string& key);

/// True for catalog keys naming compact algebras (everything except r/line).
bool catalog_key_is_compact(const std::string& key);

/// Images of the canonical su(2) basis e_k = -(i/2) sigma_k under the
/// spin-j irreducible representation, j = two_j / 2, returned as realified
/// (2(two_j+1) x 2(two_j+1)) matrices sitting inside u(two_j + 1).
std::vector<Eigen::MatrixXd> spin_irrep(int two_j);

/// Complex form of spin_irrep, (two_j+1) x (two_j+1) skew-Hermitian.
std::vector<Eigen::MatrixXcd> spin_irrep_complex(int two_j);

} // namespace modsym

#endif
