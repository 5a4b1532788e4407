#ifndef MODSYM_HOMS_HPP
#define MODSYM_HOMS_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modsym/lie.hpp"

namespace modsym {

/// A candidate Lie algebra homomorphism rho: Lie(S) -> Lie(G), stored as the
/// dim(G) x dim(S) coordinate matrix whose column i is rho(source e_i).
struct HomCandidate {
  AlgebraPtr source;
  AlgebraPtr target;
  Eigen::MatrixXd matrix;
  std::string label;

  /// rho(e_i) as a target element.
  AlgebraElement image_of_basis(int i) const;
  /// rho(x) for a source element.
  AlgebraElement image(const AlgebraElement& x) const;

  /// Max Frobenius deviation of rho([x_i,x_j]) from [rho(x_i), rho(x_j)]
  /// over source basis pairs, measured on ambient matrices.
  double hom_residual() const;
  /// One-dimensional sources make the homomorphism property vacuous; such
  /// candidates are reported as checked-trivially.
  bool vacuously_hom() const { return source->dim() == 1; }
};

HomCandidate make_candidate(AlgebraPtr source, AlgebraPtr target, Eigen::MatrixXd matrix,
                            std::string label, double hom_tol = 1e-9);

/// All su(2) -> u(n) homomorphisms up to conjugacy: one candidate per
/// partition of n, the block-diagonal sum of spin irreps of the parts
/// (1's contribute trivial summands; the all-1's partition is the zero map).
std::vector<HomCandidate> enumerate_su2_to_un(int n);

/// Candidate strategy for abelian sources (circle, line, torus(k)).
struct AbelianStrategy {
  enum class Kind { UserList, CartanGrid, IntegerWeights };
  Kind kind = Kind::UserList;

  /// UserList: one dim(G) x dim(S) matrix per candidate.
  std::vector<Eigen::MatrixXd> user;

  /// CartanGrid / IntegerWeights: indices of target basis elements spanning
  /// a designated abelian subalgebra; candidate images are grid combinations
  /// of them. IntegerWeights uses integer coefficients with step 1.
  std::vector<int> cartan;
  std::vector<std::pair<double, double>> ranges; ///< per cartan generator
  double step = 1.0;
};

/// Candidates rho for a one-dimensional source per the chosen strategy
/// (the single ambient element of the 1-dim case, in target coordinates).
std::vector<HomCandidate> onedim_candidates(AlgebraPtr source, AlgebraPtr target,
                                            const AbelianStrategy& strategy);

/// Candidates for a torus(k) source: k-tuples of commuting one-dimensional
/// images (grid strategies draw every component from the designated abelian
/// subalgebra, so commutation is by construction; user tuples are checked).
std::vector<HomCandidate> abelian_candidates(AlgebraPtr source, AlgebraPtr target,
                                             const AbelianStrategy& strategy);

/// Ad_g composed with rho. g must normalize Lie(G).
HomCandidate conjugate_candidate(const HomCandidate& rho, const Eigen::MatrixXd& g);

/// Integer partitions of n in descending-part order (largest first).
std::vector<std::vector<int>> integer_partitions(int n);

} // namespace modsym

#endif
