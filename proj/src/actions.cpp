#include "modsym/actions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "modsym/linalg.hpp"

namespace modsym {

SpaceX::SpaceX(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("SpaceX: at least one block is required");
  std::set<std::string> names;
  for (const auto& b : blocks_) {
    if (b.rows < 1 || b.cols < 1) throw DomainError("SpaceX: block '" + b.name + "' has empty shape");
    if (!b.name.empty() && !names.insert(b.name).second)
      throw DomainError("SpaceX: duplicate block name '" + b.name + "'");
    offsets_.push_back(dim_);
    dim_ += b.size();
  }
}

int SpaceX::block_index(const std::string& name) const {
  for (int b = 0; b < block_count(); ++b)
    if (blocks_[b].name == name) return b;
  throw DomainError("SpaceX: no block named '" + name + "'");
}

Eigen::MatrixXd SpaceX::block_matrix(const Eigen::VectorXd& coords, int b) const {
  const Block& blk = blocks_.at(b);
  return Eigen::Map<const Eigen::MatrixXd>(coords.data() + offsets_[b], blk.stored_rows(),
                                           blk.cols);
}

void SpaceX::set_block(Eigen::VectorXd& coords, int b, const Eigen::MatrixXd& mat) const {
  const Block& blk = blocks_.at(b);
  if (mat.rows() != blk.stored_rows() || mat.cols() != blk.cols())
    throw DomainError("set_block: shape mismatch for block '" + blk.name + "'");
  Eigen::Map<Eigen::MatrixXd>(coords.data() + offsets_[b], blk.stored_rows(), blk.cols) = mat;
}

Eigen::MatrixXcd SpaceX::block_complex(const Eigen::VectorXd& coords, int b) const {
  const Block& blk = blocks_.at(b);
  if (!blk.complex) throw DomainError("block_complex: block '" + blk.name + "' is real");
  const Eigen::MatrixXd s = block_matrix(coords, b);
  Eigen::MatrixXcd out(blk.rows, blk.cols);
  out.real() = s.topRows(blk.rows);
  out.imag() = s.bottomRows(blk.rows);
  return out;
}

void SpaceX::set_block_complex(Eigen::VectorXd& coords, int b, const Eigen::MatrixXcd& mat) const {
  const Block& blk = blocks_.at(b);
  if (!blk.complex) throw DomainError("set_block_complex: block '" + blk.name + "' is real");
  Eigen::MatrixXd s(blk.stored_rows(), blk.cols);
  s.topRows(blk.rows) = mat.real();
  s.bottomRows(blk.rows) = mat.imag();
  set_block(coords, b, s);
}

bool SpaceX::same_space(const SpaceX& other) const {
  if (dim_ != other.dim_ || blocks_.size() != other.blocks_.size()) return false;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Block &a = blocks_[i], &b = other.blocks_[i];
    if (a.rows != b.rows || a.cols != b.cols || a.complex != b.complex || a.name != b.name)
      return false;
  }
  return true;
}

PointA point(SpacePtr space, const Eigen::VectorXd& coords) {
  if (!space) throw DomainError("point: null space");
  if (coords.size() != space->dim()) throw DomainError("point: wrong coordinate dimension");
  if (!coords.allFinite()) throw DomainError("point: non-finite coordinates");
  return PointA{std::move(space), coords};
}

namespace {

bool algebra_is_abelian(const LieAlgebra& alg) {
  for (int k = 0; k < alg.dim(); ++k)
    if (alg.structure_slice(k).cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

// Stacked 90-degree rotation [Re; Im] -> [-Im; Re] on a complex block.
Eigen::MatrixXd stacked_j(int rows) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * rows, 2 * rows);
  j.topRightCorner(rows, rows) = -Eigen::MatrixXd::Identity(rows, rows);
  j.bottomLeftCorner(rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  return j;
}

} // namespace

LinearAction::LinearAction(AlgebraPtr algebra, SpacePtr space, ActionTemplate tmpl, double rep_tol)
    : algebra_(std::move(algebra)), space_(std::move(space)), template_(std::move(tmpl)),
      has_template_(true) {
  if (!algebra_ || !space_) throw DomainError("LinearAction: null algebra or space");
  validate_template();
  derive_ops();
  check_rep_property(rep_tol);
}

LinearAction::LinearAction(AlgebraPtr algebra, SpacePtr space,
                           std::vector<Eigen::MatrixXd> generator_ops, double rep_tol)
    : algebra_(std::move(algebra)), space_(std::move(space)), ops_(std::move(generator_ops)) {
  if (!algebra_ || !space_) throw DomainError("LinearAction: null algebra or space");
  if (static_cast<int>(ops_.size()) != algebra_->dim())
    throw DomainError("LinearAction: one generator operator per basis element required");
  for (const auto& op : ops_)
    if (op.rows() != space_->dim() || op.cols() != space_->dim())
      throw DomainError("LinearAction: generator operators must be dim(X) x dim(X)");
  check_rep_property(rep_tol);
}

void LinearAction::validate_template() const {
  const int ambient = algebra_->ambient();
  for (const auto& clause : template_) {
    if (clause.blocks.empty())
      throw DomainError("LinearAction: template clause lists no blocks");
    std::set<int> seen;
    for (int b : clause.blocks) {
      if (b < 0 || b >= space_->block_count())
        throw DomainError("LinearAction: template references missing block index " +
                          std::to_string(b));
      if (!seen.insert(b).second)
        throw DomainError("LinearAction: duplicate block in template clause");
    }
    for (int bi : clause.blocks) {
      const Block& blk = space_->block(bi);
      switch (clause.kind) {
      case TemplateClause::Kind::Conjugate:
        if (blk.rows != blk.cols)
          throw DomainError("LinearAction: conjugation needs a square block ('" + blk.name + "')");
        if (blk.complex) {
          if (!algebra_->complex_embedded() || ambient != 2 * blk.rows)
            throw DomainError("LinearAction: conjugation size mismatch on block '" + blk.name +
                              "'");
        } else if (algebra_->complex_embedded() || ambient != blk.rows) {
          throw DomainError("LinearAction: conjugation size mismatch on block '" + blk.name + "'");
        }
        break;
      case TemplateClause::Kind::Left:
        if (ambient != blk.stored_rows())
          throw DomainError("LinearAction: left multiplication size mismatch on block '" +
                            blk.name + "'");
        break;
      case TemplateClause::Kind::RightInv:
        if (blk.complex) {
          if (!algebra_->complex_embedded() || ambient != 2 * blk.cols)
            throw DomainError("LinearAction: right multiplication size mismatch on block '" +
                              blk.name + "'");
        } else if (algebra_->complex_embedded() || ambient != blk.cols) {
          throw DomainError("LinearAction: right multiplication size mismatch on block '" +
                            blk.name + "'");
        }
        break;
      case TemplateClause::Kind::Weight:
        if (!algebra_is_abelian(*algebra_))
          throw DomainError("LinearAction: weight action requires an abelian algebra");
        if (static_cast<int>(clause.weights.size()) != algebra_->dim())
          throw DomainError("LinearAction: weight clause needs one weight per generator");
        if (algebra_->complex_embedded()) {
          if (!blk.complex)
            throw DomainError("LinearAction: weight action needs a complex block ('" + blk.name +
                              "')");
        } else if (ambient != 1) {
          throw DomainError("LinearAction: weight action supports torus and line algebras only");
        }
        break;
      case TemplateClause::Kind::AdjointMix:
        break;
      }
    }
    if (clause.kind == TemplateClause::Kind::AdjointMix) {
      if (static_cast<int>(clause.blocks.size()) != algebra_->dim())
        throw DomainError("LinearAction: adjoint mixing needs dim(algebra) blocks");
      const Block& first = space_->block(clause.blocks[0]);
      for (int bi : clause.blocks) {
        const Block& blk = space_->block(bi);
        if (blk.rows != first.rows || blk.cols != first.cols || blk.complex != first.complex)
          throw DomainError("LinearAction: adjoint mixing needs identically shaped blocks");
      }
    }
  }
}

void LinearAction::derive_ops() {
  const int m = space_->dim();
  const int d = algebra_->dim();
  ops_.assign(d, Eigen::MatrixXd::Zero(m, m));

  for (int i = 0; i < d; ++i) {
    const Eigen::MatrixXd& y = algebra_->basis_element(i);
    Eigen::MatrixXd& op = ops_[i];

    for (const auto& clause : template_) {
      switch (clause.kind) {
      case TemplateClause::Kind::Left:
      case TemplateClause::Kind::RightInv:
      case TemplateClause::Kind::Conjugate: {
        const bool left = clause.kind != TemplateClause::Kind::RightInv;
        const bool right = clause.kind != TemplateClause::Kind::Left;
        for (int bi : clause.blocks) {
          const Block& blk = space_->block(bi);
          const int off = space_->offset(bi);
          const int sr = blk.stored_rows();
          if (left) {
            // A -> y A acts per stored column.
            for (int c = 0; c < blk.cols; ++c)
              op.block(off + c * sr, off + c * sr, sr, sr) += y;
          }
          if (right) {
            // A -> -A y mixes stored columns.
            if (blk.complex) {
              const Eigen::MatrixXcd yc = derealify(y);
              const Eigen::MatrixXd jb = stacked_j(blk.rows);
              for (int c = 0; c < blk.cols; ++c)
                for (int k = 0; k < blk.cols; ++k) {
                  const std::complex<double> coef = -yc(k, c);
                  op.block(off + c * sr, off + k * sr, sr, sr) +=
                      coef.real() * Eigen::MatrixXd::Identity(sr, sr) + coef.imag() * jb;
                }
            } else {
              for (int c = 0; c < blk.cols; ++c)
                for (int k = 0; k < blk.cols; ++k)
                  op.block(off + c * sr, off + k * sr, sr, sr) -=
                      y(k, c) * Eigen::MatrixXd::Identity(sr, sr);
            }
          }
        }
        break;
      }
      case TemplateClause::Kind::Weight: {
        const double w = static_cast<double>(clause.weights[i]);
        for (int bi : clause.blocks) {
          const Block& blk = space_->block(bi);
          const int off = space_->offset(bi);
          const int sr = blk.stored_rows();
          if (algebra_->complex_embedded()) {
            const Eigen::MatrixXd jb = stacked_j(blk.rows);
            for (int c = 0; c < blk.cols; ++c)
              op.block(off + c * sr, off + c * sr, sr, sr) += w * jb;
          } else {
            // line: real character e^{w t}
            op.block(off, off, blk.size(), blk.size()) +=
                w * Eigen::MatrixXd::Identity(blk.size(), blk.size());
          }
        }
        break;
      }
      case TemplateClause::Kind::AdjointMix: {
        // (e_i . A)_k = sum_l c_{ilk} A_l
        for (int k = 0; k < d; ++k) {
          const int bk = clause.blocks[k];
          const int sz = space_->block(bk).size();
          for (int l = 0; l < d; ++l) {
            const double c = algebra_->structure(i, l, k);
            if (c == 0.0) continue;
            op.block(space_->offset(bk), space_->offset(clause.blocks[l]), sz, sz) +=
                c * Eigen::MatrixXd::Identity(sz, sz);
          }
        }
        break;
      }
      }
    }
  }
}

void LinearAction::check_rep_property(double rep_tol) {
  const int d = algebra_->dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(space_->dim(), space_->dim());
      for (int k = 0; k < d; ++k) {
        const double c = algebra_->structure(i, j, k);
        if (c != 0.0) expect += c * ops_[k];
      }
      const double res = (ops_[i] * ops_[j] - ops_[j] * ops_[i] - expect).norm();
      worst = std::max(worst, res);
    }
  rep_residual_ = worst;
  if (worst > rep_tol)
    throw NumericalError("LinearAction: representation property violated (residual " +
                         std::to_string(worst) + "); the template is not an action");
}

Eigen::MatrixXd LinearAction::op(const AlgebraElement& y) const {
  if (!y.algebra->same_algebra(*algebra_))
    throw DomainError("LinearAction::op: element from a different algebra");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(space_->dim(), space_->dim());
  for (int i = 0; i < algebra_->dim(); ++i)
    if (y.coords(i) != 0.0) out += y.coords(i) * ops_[i];
  return out;
}

LinearAction build_action(AlgebraPtr algebra, SpacePtr space, ActionTemplate tmpl,
                          double rep_tol) {
  return LinearAction(std::move(algebra), std::move(space), std::move(tmpl), rep_tol);
}

PointA act_group(const LinearAction& action, const Eigen::MatrixXd& g, const PointA& A) {
  if (!action.has_template())
    throw UnsupportedError("act_group: action has no template (raw-operator action)");
  if (!A.space->same_space(*action.space()))
    throw DomainError("act_group: point lives on a different space");
  const int ambient = action.algebra()->ambient();
  if (g.rows() != ambient || g.cols() != ambient)
    throw DomainError("act_group: group matrix has wrong ambient size");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw DomainError("act_group: singular group matrix");

  const SpaceX& space = *action.space();
  Eigen::VectorXd coords = A.coords;
  for (const auto& clause : action.template_) {
    switch (clause.kind) {
    case TemplateClause::Kind::Left:
      for (int bi : clause.blocks)
        space.set_block(coords, bi, g * space.block_matrix(coords, bi));
      break;
    case TemplateClause::Kind::RightInv:
    case TemplateClause::Kind::Conjugate: {
      const bool left = clause.kind == TemplateClause::Kind::Conjugate;
      for (int bi : clause.blocks) {
        if (space.block(bi).complex) {
          const Eigen::MatrixXcd gc = derealify(g);
          const Eigen::MatrixXcd gcinv = gc.fullPivLu().inverse();
          Eigen::MatrixXcd a = space.block_complex(coords, bi);
          a = left ? Eigen::MatrixXcd(gc * a * gcinv) : Eigen::MatrixXcd(a * gcinv);
          space.set_block_complex(coords, bi, a);
        } else {
          const Eigen::MatrixXd ginv = lu.inverse();
          Eigen::MatrixXd a = space.block_matrix(coords, bi);
          a = left ? Eigen::MatrixXd(g * a * ginv) : Eigen::MatrixXd(a * ginv);
          space.set_block(coords, bi, a);
        }
      }
      break;
    }
    case TemplateClause::Kind::Weight: {
      if (action.algebra()->complex_embedded()) {
        const Eigen::MatrixXcd gc = derealify(g);
        const int k = static_cast<int>(gc.rows());
        double phase = 0.0;
        for (int j = 0; j < k; ++j) {
          for (int l = 0; l < k; ++l)
            if (l != j && std::abs(gc(j, l)) > 1e-8)
              throw NumericalError("act_group: weight action needs a torus group element");
          if (std::abs(std::abs(gc(j, j)) - 1.0) > 1e-8)
            throw NumericalError("act_group: weight action needs a torus group element");
          phase += clause.weights[j] * std::arg(gc(j, j));
        }
        const std::complex<double> factor = std::polar(1.0, phase);
        for (int bi : clause.blocks)
          space.set_block_complex(coords, bi, factor * space.block_complex(coords, bi));
      } else {
        const double s = g(0, 0);
        if (!(s > 0.0))
          throw NumericalError("act_group: line group element must be a positive scalar");
        for (int bi : clause.blocks)
          space.set_block(coords, bi,
                          std::pow(s, clause.weights[0]) * space.block_matrix(coords, bi));
      }
      break;
    }
    case TemplateClause::Kind::AdjointMix: {
      const auto& alg = *action.algebra();
      const int d = alg.dim();
      Eigen::MatrixXd rep(d, d);
      for (int l = 0; l < d; ++l)
        rep.col(l) =
            adjoint(g, AlgebraElement{action.algebra(), Eigen::VectorXd::Unit(d, l)}).coords;
      std::vector<Eigen::MatrixXd> mixed(d);
      for (int k = 0; k < d; ++k) {
        mixed[k] = Eigen::MatrixXd::Zero(space.block(clause.blocks[k]).stored_rows(),
                                         space.block(clause.blocks[k]).cols);
        for (int l = 0; l < d; ++l)
          if (rep(k, l) != 0.0) mixed[k] += rep(k, l) * space.block_matrix(coords, clause.blocks[l]);
      }
      for (int k = 0; k < d; ++k) space.set_block(coords, clause.blocks[k], mixed[k]);
      break;
    }
    }
  }
  return PointA{A.space, coords};
}

PointA act_alg(const LinearAction& action, const AlgebraElement& y, const PointA& A) {
  if (!y.algebra->same_algebra(*action.algebra()))
    throw DomainError("act_alg: element from a different algebra");
  if (!A.space->same_space(*action.space()))
    throw DomainError("act_alg: point lives on a different space");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(A.coords.size());
  for (int i = 0; i < action.algebra()->dim(); ++i)
    if (y.coords(i) != 0.0) out += y.coords(i) * (action.generator_op(i) * A.coords);
  return PointA{A.space, out};
}

Eigen::MatrixXd group_op(const LinearAction& action, const Eigen::MatrixXd& g) {
  const int m = action.space()->dim();
  Eigen::MatrixXd t(m, m);
  for (int c = 0; c < m; ++c) {
    const PointA unit{action.space(), Eigen::VectorXd::Unit(m, c)};
    t.col(c) = act_group(action, g, unit).coords;
  }
  return t;
}

CommutingReport check_commuting(const LinearAction& act_g, const LinearAction& act_s, int trials,
                                CounterRng& rng, double tol_group, double tol_algebra) {
  if (!act_g.space()->same_space(*act_s.space()))
    throw DomainError("check_commuting: actions live on different spaces");
  CommutingReport rep;
  rep.trials = trials;

  for (int i = 0; i < act_g.algebra()->dim(); ++i)
    for (int j = 0; j < act_s.algebra()->dim(); ++j) {
      const Eigen::MatrixXd& a = act_g.generator_op(i);
      const Eigen::MatrixXd& b = act_s.generator_op(j);
      rep.algebra_residual = std::max(rep.algebra_residual, (a * b - b * a).norm());
    }

  const int m = act_g.space()->dim();
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd g =
        matrix_exp(act_g.algebra()->matrix_of(rng.unit_vector(act_g.algebra()->dim())));
    const Eigen::MatrixXd s =
        matrix_exp(act_s.algebra()->matrix_of(rng.unit_vector(act_s.algebra()->dim())));
    const PointA a{act_g.space(), rng.unit_vector(m)};
    const PointA gs = act_group(act_g, g, act_group(act_s, s, a));
    const PointA sg = act_group(act_s, s, act_group(act_g, g, a));
    rep.group_residual = std::max(rep.group_residual, (gs.coords - sg.coords).norm());
  }
  rep.pass = rep.group_residual <= tol_group && rep.algebra_residual <= tol_algebra;
  return rep;
}

} // namespace modsym
