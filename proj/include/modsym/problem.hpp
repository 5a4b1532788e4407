#ifndef MODSYM_PROBLEM_HPP
#define MODSYM_PROBLEM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "modsym/actions.hpp"
#include "modsym/homs.hpp"
#include "modsym/solver.hpp"
#include "modsym/verify.hpp"

namespace modsym {

/// Pipeline stages; each subcommand runs the prefix up to its stage.
enum class Stage { Check = 0, Homs = 1, Solve = 2, Verify = 3, Stabilizer = 4 };

Stage stage_from_name(const std::string& name); // check|homs|solve|verify|stabilizer|all

/// A validated problem: declarative description of the space, the two
/// actions, the candidate strategy, tolerances and the seed. All defaults
/// are materialized, so the echo in the report is complete.
struct ProblemSpec {
  std::string name;
  std::string description;
  std::vector<Block> blocks;
  std::string gauge_key;
  std::string symmetry_key;
  std::vector<Eigen::MatrixXd> component_reps;
  ActionTemplate action_gauge;
  ActionTemplate action_symmetry;

  enum class StrategyKind { Su2Partitions, IntegerWeights, CartanGrid, UserList };
  StrategyKind strategy_kind = StrategyKind::UserList;
  AbelianStrategy strategy; // unused for Su2Partitions

  std::map<std::string, double> tolerances; // full table, names below
  int exp_samples = 50;
  double t_range = 10.0;
  int orbit_samples = 3;
  int restarts = 8;
  int commuting_trials = 20;
  std::uint64_t seed = 0;

  double tol(const std::string& name) const;

  /// Fully materialized problem echo (defaults included).
  nlohmann::json echo() const;
};

/// Default tolerance table (every threshold the pipeline uses, by name).
const std::map<std::string, double>& default_tolerances();

/// Parse and validate a problem file; schema violations carry the offending
/// field path in the message.
ProblemSpec parse_problem(const std::string& path);
ProblemSpec parse_problem_json(const nlohmann::json& doc);

/// Everything the pipeline needs at runtime, built from a spec.
struct ProblemInstance {
  ProblemSpec spec;
  SpacePtr space;
  AlgebraPtr gauge;
  AlgebraPtr symmetry;
  LinearAction act_gauge;
  LinearAction act_symmetry;
};

ProblemInstance instantiate(const ProblemSpec& spec);

/// Candidate list per the spec's strategy, sorted by label.
std::vector<HomCandidate> enumerate_candidates(const ProblemInstance& inst);

/// Deterministic machine-readable run report; given (spec, seed, version)
/// the serialized bytes are identical across runs.
struct RunReport {
  nlohmann::json doc;
  bool hypotheses_ok = false;

  std::string to_json() const; // pretty, trailing newline
  std::string to_text() const;
};

RunReport run_pipeline(const ProblemSpec& spec, Stage stage);

} // namespace modsym

#endif
