#ifndef MODSYM_ACTIONS_HPP
#define MODSYM_ACTIONS_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modsym/lie.hpp"
#include "modsym/rng.hpp"

namespace modsym {

/// One block of the space X. Real blocks store rows*cols coordinates;
/// complex blocks store the stacked real form [Re; Im] ((2 rows) x cols),
/// flattened column-major, so left multiplication by a complex-embedded
/// group matrix is plain real matrix multiplication.
struct Block {
  std::string name;
  int rows = 1;
  int cols = 1;
  bool complex = false;

  int stored_rows() const { return complex ? 2 * rows : rows; }
  int size() const { return stored_rows() * cols; }
};

/// X as a direct sum of matrix blocks (a flat vector is an m x 1 real block).
class SpaceX {
public:
  explicit SpaceX(std::vector<Block> blocks);

  int dim() const { return dim_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Block& block(int b) const { return blocks_.at(b); }
  int offset(int b) const { return offsets_.at(b); }
  /// Index of a named block; DomainError if absent.
  int block_index(const std::string& name) const;

  /// Stacked real matrix view of block b of a coordinate vector.
  Eigen::MatrixXd block_matrix(const Eigen::VectorXd& coords, int b) const;
  void set_block(Eigen::VectorXd& coords, int b, const Eigen::MatrixXd& mat) const;
  /// Complex form of a complex block.
  Eigen::MatrixXcd block_complex(const Eigen::VectorXd& coords, int b) const;
  void set_block_complex(Eigen::VectorXd& coords, int b, const Eigen::MatrixXcd& mat) const;

  bool same_space(const SpaceX& other) const;

private:
  std::vector<Block> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

using SpacePtr = std::shared_ptr<const SpaceX>;

/// A point A of X in flat coordinates.
struct PointA {
  SpacePtr space;
  Eigen::VectorXd coords;

  double norm() const { return coords.norm(); }
};

PointA point(SpacePtr space, const Eigen::VectorXd& coords);

/// One primitive of an action template, applied to the listed blocks.
/// Single-block primitives apply to each listed block independently;
/// AdjointMix uses the whole list jointly (one block per basis element of
/// the acting algebra, mixed through the adjoint representation).
struct TemplateClause {
  enum class Kind { Conjugate, Left, RightInv, Weight, AdjointMix };
  Kind kind;
  std::vector<int> blocks;
  /// Weight only: one integer weight per basis element of the (abelian) algebra.
  std::vector<int> weights;
};

using ActionTemplate = std::vector<TemplateClause>;

/// Residuals of the commuting-hypothesis check between two actions.
struct CommutingReport {
  double group_residual = 0.0;   ///< max over sampled group pairs
  double algebra_residual = 0.0; ///< max operator-commutator norm over basis pairs
  int trials = 0;
  bool pass = false;
};

/// A linear left action of a Lie group/algebra on X. The group-level
/// evaluator applies the template; the infinitesimal operators L(e_i) are
/// derived symbolically per primitive and checked against the structure
/// constants at construction (representation property).
class LinearAction {
public:
  LinearAction(AlgebraPtr algebra, SpacePtr space, ActionTemplate tmpl, double rep_tol = 1e-9);

  /// Extension hook: custom action given directly by its generator operators.
  /// No template, so group-level evaluation is unavailable.
  LinearAction(AlgebraPtr algebra, SpacePtr space, std::vector<Eigen::MatrixXd> generator_ops,
               double rep_tol = 1e-9);

  const AlgebraPtr& algebra() const { return algebra_; }
  const SpacePtr& space() const { return space_; }
  bool has_template() const { return has_template_; }
  const ActionTemplate& action_template() const { return template_; }

  /// L(e_i) as an m x m real matrix.
  const Eigen::MatrixXd& generator_op(int i) const { return ops_.at(i); }
  /// L(y) for an algebra element.
  Eigen::MatrixXd op(const AlgebraElement& y) const;
  double rep_property_residual() const { return rep_residual_; }

private:
  AlgebraPtr algebra_;
  SpacePtr space_;
  ActionTemplate template_;
  std::vector<Eigen::MatrixXd> ops_;
  bool has_template_ = false;
  double rep_residual_ = 0.0;

  void validate_template() const;
  void derive_ops();
  void check_rep_property(double rep_tol);

  friend PointA act_group(const LinearAction&, const Eigen::MatrixXd&, const PointA&);
};

LinearAction build_action(AlgebraPtr algebra, SpacePtr space, ActionTemplate tmpl,
                          double rep_tol = 1e-9);

/// Group-level action A -> g . A through the template.
PointA act_group(const LinearAction& action, const Eigen::MatrixXd& g, const PointA& A);

/// Infinitesimal action y . A = L(y) A.
PointA act_alg(const LinearAction& action, const AlgebraElement& y, const PointA& A);

/// m x m matrix of A -> g . A (built by applying the template to unit vectors).
Eigen::MatrixXd group_op(const LinearAction& action, const Eigen::MatrixXd& g);

/// Checks that two actions on the same space commute: operator commutators
/// on all basis pairs (<= tol_algebra) and sampled group-level compositions
/// (<= tol_group). A failing report must abort downstream solving.
CommutingReport check_commuting(const LinearAction& act_g, const LinearAction& act_s, int trials,
                                CounterRng& rng, double tol_group = 1e-8,
                                double tol_algebra = 1e-9);

} // namespace modsym

#endif
