#ifndef MODSYM_VERIFY_HPP
#define MODSYM_VERIFY_HPP

#include <vector>

#include <Eigen/Dense>

#include "modsym/actions.hpp"
#include "modsym/homs.hpp"
#include "modsym/rng.hpp"

namespace modsym {

/// ||exp(t rho(x)) . (exp(t x) . A) - A|| for one sample (x, t). For a point
/// satisfying the linear criterion with commuting actions this vanishes for
/// every x and t.
double exp_path_residual_at(const LinearAction& act_s, const LinearAction& act_g,
                            const HomCandidate& rho, const PointA& A, const AlgebraElement& x,
                            double t);

struct ExpPathReport {
  int samples = 0;
  double t_range = 0.0;
  double max_residual = 0.0;
};

/// Samples unit x in Lie(S) and t in [-t_range, t_range]; reports the worst
/// exp-path residual. A large residual is a result, not an error.
ExpPathReport verify_exp_path(const LinearAction& act_s, const LinearAction& act_g,
                              const HomCandidate& rho, const PointA& A, int samples,
                              double t_range, CounterRng& rng);

/// Result of the numerical orbit-membership test B ~ C under G. "member"
/// is one-sided: true is a certificate (a witness g with small residual was
/// found), false only says the local search found none.
struct OrbitResult {
  bool member = false;
  double residual = 0.0;     ///< best ||exp(xi) . B - C|| found
  Eigen::VectorXd xi;        ///< minimizer coordinates in Lie(G)
  Eigen::MatrixXd witness_g; ///< exp of the minimizer
};

struct OrbitOptions {
  int restarts = 8;        ///< random starts in addition to xi = 0
  double pass_tol = 1e-5;  ///< residual below which membership is certified
  int max_iters = 500;     ///< gradient-descent iterations per start
  double fd_step = 1e-5;   ///< central-difference step for the path derivative
  double start_scale = 2.0; ///< std-dev of random start coordinates
};

/// Minimizes ||exp(xi) . B - C||^2 over xi in Lie(G) by gradient descent
/// with backtracking line search. Requires a compact catalog gauge algebra
/// (exp is onto the identity component, so one chart suffices).
OrbitResult orbit_membership(const LinearAction& act_g, const PointA& B, const PointA& C,
                             int restarts, CounterRng& rng, OrbitOptions opts = {});

/// One disconnected-component check: the representative's motion of A must
/// be undone by some gauge element.
struct ComponentCheck {
  double residual = 0.0;
  bool pass = false;
};

struct ComponentReport {
  std::vector<ComponentCheck> results;
  bool identity_only = false; ///< no representatives were supplied
  bool all_pass = false;
};

/// Runs orbit_membership(act_g, r . A, A) for one user-supplied
/// representative r per non-identity component of S. With an empty list the
/// verdict covers the identity component only and is flagged as such.
ComponentReport check_components(const LinearAction& act_s, const LinearAction& act_g,
                                 const PointA& A, const std::vector<Eigen::MatrixXd>& reps,
                                 int restarts, CounterRng& rng, OrbitOptions opts = {});

struct VerifyOptions {
  int exp_samples = 50;
  double t_range = 10.0;
  int orbit_samples = 3; ///< sampled s in S for direct orbit checks
  int restarts = 8;
  double exp_pass = 1e-7;
  double orbit_pass = 1e-5;
};

struct OrbitSample {
  Eigen::VectorXd x; ///< unit direction in Lie(S)
  double t = 0.0;
  double residual = 0.0;
  bool member = false;
};

/// Full verification of a claimed fixed point (exp paths, sampled direct
/// orbit checks, component representatives) with a combined verdict.
struct FixedPointReport {
  PointA A;
  HomCandidate rho;
  ExpPathReport exp_path;
  std::vector<OrbitSample> orbit_residuals;
  ComponentReport components;
  bool verdict = false;
};

FixedPointReport verify_fixed_point(const LinearAction& act_s, const LinearAction& act_g,
                                    const HomCandidate& rho, const PointA& A,
                                    const std::vector<Eigen::MatrixXd>& component_reps,
                                    const VerifyOptions& opts, CounterRng& rng);

} // namespace modsym

#endif
