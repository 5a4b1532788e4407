#include "modsym/verify.hpp"

#include <algorithm>
#include <cmath>

#include "modsym/linalg.hpp"

namespace modsym {

double exp_path_residual_at(const LinearAction& act_s, const LinearAction& act_g,
                            const HomCandidate& rho, const PointA& A, const AlgebraElement& x,
                            double t) {
  const Eigen::MatrixXd gs = matrix_exp(t * x.matrix());
  const Eigen::MatrixXd gg = matrix_exp(t * rho.image(x).matrix());
  const PointA moved = act_group(act_g, gg, act_group(act_s, gs, A));
  return (moved.coords - A.coords).norm();
}

ExpPathReport verify_exp_path(const LinearAction& act_s, const LinearAction& act_g,
                              const HomCandidate& rho, const PointA& A, int samples,
                              double t_range, CounterRng& rng) {
  ExpPathReport rep;
  rep.samples = samples;
  rep.t_range = t_range;
  const int ds = act_s.algebra()->dim();
  for (int i = 0; i < samples; ++i) {
    const AlgebraElement x{act_s.algebra(), rng.unit_vector(ds)};
    const double t = rng.uniform(-t_range, t_range);
    rep.max_residual = std::max(rep.max_residual, exp_path_residual_at(act_s, act_g, rho, A, x, t));
  }
  return rep;
}

namespace {

void require_compact_catalog(const LieAlgebra& alg) {
  bool compact;
  try {
    compact = catalog_key_is_compact(alg.name());
  } catch (const DomainError&) {
    throw UnsupportedError("orbit_membership: gauge algebra '" + alg.name() +
                           "' is not a catalog algebra");
  }
  if (!compact)
    throw UnsupportedError("orbit_membership: gauge group must be compact ('" + alg.name() +
                           "' is not)");
}

struct Objective {
  const LinearAction& act;
  const PointA& B;
  const PointA& C;

  Eigen::VectorXd path(const Eigen::VectorXd& xi) const {
    return act_group(act, matrix_exp(act.algebra()->matrix_of(xi)), B).coords;
  }
  double value(const Eigen::VectorXd& xi) const { return (path(xi) - C.coords).squaredNorm(); }

  // Gradient via a central difference of the path map in each coordinate.
  Eigen::VectorXd gradient(const Eigen::VectorXd& xi, double h) const {
    const Eigen::VectorXd diff = path(xi) - C.coords;
    Eigen::VectorXd g(xi.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      Eigen::VectorXd xp = xi, xm = xi;
      xp(i) += h;
      xm(i) -= h;
      g(i) = 2.0 * ((path(xp) - path(xm)) / (2.0 * h)).dot(diff);
    }
    return g;
  }
};

// Gradient descent with Armijo backtracking from one start.
std::pair<double, Eigen::VectorXd> descend(const Objective& obj, Eigen::VectorXd xi,
                                           const OrbitOptions& opts) {
  double f = obj.value(xi);
  double alpha = 1.0;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (f <= 1e-18) break;
    const Eigen::VectorXd g = obj.gradient(xi, opts.fd_step);
    const double gn2 = g.squaredNorm();
    if (gn2 <= 1e-24) break;
    alpha = std::min(alpha * 2.0, 1.0);
    bool moved = false;
    while (alpha > 1e-14) {
      const Eigen::VectorXd cand = xi - alpha * g;
      const double fc = obj.value(cand);
      if (fc <= f - 1e-4 * alpha * gn2) {
        xi = cand;
        f = fc;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return {f, xi};
}

} // namespace

OrbitResult orbit_membership(const LinearAction& act_g, const PointA& B, const PointA& C,
                             int restarts, CounterRng& rng, OrbitOptions opts) {
  require_compact_catalog(*act_g.algebra());
  if (restarts < 1) throw DomainError("orbit_membership: restarts must be >= 1");
  if (!B.space->same_space(*act_g.space()) || !C.space->same_space(*act_g.space()))
    throw DomainError("orbit_membership: points live on a different space");
  opts.restarts = restarts;

  const Objective obj{act_g, B, C};
  const int dg = act_g.algebra()->dim();

  double best_f = obj.value(Eigen::VectorXd::Zero(dg));
  Eigen::VectorXd best_xi = Eigen::VectorXd::Zero(dg);
  auto consider = [&](const Eigen::VectorXd& start) {
    auto [f, xi] = descend(obj, start, opts);
    if (f < best_f) {
      best_f = f;
      best_xi = xi;
    }
  };
  consider(Eigen::VectorXd::Zero(dg));
  for (int r = 0; r < restarts && best_f > 1e-18; ++r)
    consider(opts.start_scale * rng.gaussian_vector(dg));

  OrbitResult res;
  res.residual = std::sqrt(std::max(0.0, best_f));
  res.xi = best_xi;
  res.witness_g = matrix_exp(act_g.algebra()->matrix_of(best_xi));
  res.member = res.residual <= opts.pass_tol;
  return res;
}

ComponentReport check_components(const LinearAction& act_s, const LinearAction& act_g,
                                 const PointA& A, const std::vector<Eigen::MatrixXd>& reps,
                                 int restarts, CounterRng& rng, OrbitOptions opts) {
  ComponentReport rep;
  if (reps.empty()) {
    rep.identity_only = true;
    rep.all_pass = true; // vacuously; callers must surface the flag
    return rep;
  }
  rep.all_pass = true;
  for (const auto& r : reps) {
    const PointA moved = act_group(act_s, r, A);
    const OrbitResult orb = orbit_membership(act_g, moved, A, restarts, rng, opts);
    rep.results.push_back(ComponentCheck{orb.residual, orb.member});
    rep.all_pass = rep.all_pass && orb.member;
  }
  return rep;
}

FixedPointReport verify_fixed_point(const LinearAction& act_s, const LinearAction& act_g,
                                    const HomCandidate& rho, const PointA& A,
                                    const std::vector<Eigen::MatrixXd>& component_reps,
                                    const VerifyOptions& opts, CounterRng& rng) {
  FixedPointReport rep{A, rho, {}, {}, {}, false};
  rep.exp_path = verify_exp_path(act_s, act_g, rho, A, opts.exp_samples, opts.t_range, rng);

  OrbitOptions orbit_opts;
  orbit_opts.pass_tol = opts.orbit_pass;
  const int ds = act_s.algebra()->dim();
  bool orbits_ok = true;
  for (int i = 0; i < opts.orbit_samples; ++i) {
    OrbitSample sample;
    sample.x = rng.unit_vector(ds);
    sample.t = rng.uniform(-opts.t_range, opts.t_range);
    const Eigen::MatrixXd s =
        matrix_exp(sample.t * act_s.algebra()->matrix_of(sample.x));
    const OrbitResult orb =
        orbit_membership(act_g, act_group(act_s, s, A), A, opts.restarts, rng, orbit_opts);
    sample.residual = orb.residual;
    sample.member = orb.member;
    orbits_ok = orbits_ok && orb.member;
    rep.orbit_residuals.push_back(std::move(sample));
  }

  rep.components =
      check_components(act_s, act_g, A, component_reps, opts.restarts, rng, orbit_opts);
  rep.verdict =
      rep.exp_path.max_residual <= opts.exp_pass && orbits_ok && rep.components.all_pass;
  return rep;
}

} // namespace modsym
