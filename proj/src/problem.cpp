#include "modsym/problem.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "modsym/linalg.hpp"
#include "modsym/version.hpp"

namespace modsym {

using nlohmann::json;

Stage stage_from_name(const std::string& name) {
  if (name == "check") return Stage::Check;
  if (name == "homs") return Stage::Homs;
  if (name == "solve") return Stage::Solve;
  if (name == "verify") return Stage::Verify;
  if (name == "stabilizer" || name == "all") return Stage::Stabilizer;
  throw DomainError("unknown stage '" + name + "'");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"jacobi", 1e-10},          // Lie algebra Jacobi identity
      {"basis_bracket", 1e-10},   // matrix brackets vs structure constants
      {"rep_property", 1e-9},     // action representation property
      {"commute_group", 1e-8},    // group-level commuting residual
      {"commute_algebra", 1e-9},  // operator commutators
      {"hom_property", 1e-9},     // candidate homomorphism residual
      {"nullspace", 1e-8},        // relative singular-value cut
      {"gap_warn", 0.1},          // unclear-rank warning threshold
      {"exp_path_pass", 1e-7},    // verification pass threshold
      {"orbit_pass", 1e-5},       // orbit-membership certificate threshold
      {"bracket_closure", 1e-7},  // stabilizer bracket-closure flag
      {"witness", 1e-7},          // stabilizer witness residual flag
      {"normalizer", 1e-8},       // adjoint span residual
      {"exp_tol", 1e-13},         // matrix exponential backward error
  };
  return defaults;
}

double ProblemSpec::tol(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw DomainError("unknown tolerance '" + name + "'");
  return it->second;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw DomainError(path + ": " + msg);
}

const json& need(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) fail(path + "." + key, "missing field");
  return doc.at(key);
}

std::string need_string(const json& doc, const std::string& key, const std::string& path) {
  const json& v = need(doc, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

int need_int(const json& doc, const std::string& key, const std::string& path) {
  const json& v = need(doc, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

double need_number(const json& doc, const std::string& key, const std::string& path) {
  const json& v = need(doc, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

Eigen::MatrixXd parse_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of rows");
  const size_t rows = v.size();
  if (!v[0].is_array()) {
    // flat vector -> column
    Eigen::MatrixXd m(rows, 1);
    for (size_t i = 0; i < rows; ++i) {
      if (!v[i].is_number()) fail(path, "expected numbers");
      m(static_cast<Eigen::Index>(i), 0) = v[i].get<double>();
    }
    return m;
  }
  const size_t cols = v[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) fail(path, "ragged matrix rows");
    for (size_t j = 0; j < cols; ++j) {
      if (!v[i][j].is_number()) fail(path, "expected numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

const char* clause_op_name(TemplateClause::Kind k) {
  switch (k) {
  case TemplateClause::Kind::Conjugate: return "conjugate";
  case TemplateClause::Kind::Left: return "left";
  case TemplateClause::Kind::RightInv: return "right_inv";
  case TemplateClause::Kind::Weight: return "weight";
  case TemplateClause::Kind::AdjointMix: return "adjoint_mix";
  }
  return "?";
}

TemplateClause::Kind clause_op_from_name(const std::string& s, const std::string& path) {
  if (s == "conjugate") return TemplateClause::Kind::Conjugate;
  if (s == "left") return TemplateClause::Kind::Left;
  if (s == "right_inv") return TemplateClause::Kind::RightInv;
  if (s == "weight") return TemplateClause::Kind::Weight;
  if (s == "adjoint_mix") return TemplateClause::Kind::AdjointMix;
  fail(path, "unknown op '" + s + "' (conjugate|left|right_inv|weight|adjoint_mix)");
}

ActionTemplate parse_template(const json& v, const std::vector<Block>& blocks,
                              const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of clauses");
  ActionTemplate tmpl;
  for (size_t ci = 0; ci < v.size(); ++ci) {
    const std::string cpath = path + "[" + std::to_string(ci) + "]";
    const json& c = v[ci];
    if (!c.is_object()) fail(cpath, "expected an object");
    TemplateClause clause;
    clause.kind = clause_op_from_name(need_string(c, "op", cpath), cpath + ".op");
    const json& bl = need(c, "blocks", cpath);
    if (!bl.is_array() || bl.empty()) fail(cpath + ".blocks", "expected a nonempty array");
    for (const auto& b : bl) {
      if (!b.is_string()) fail(cpath + ".blocks", "expected block names");
      const std::string name = b.get<std::string>();
      auto it = std::find_if(blocks.begin(), blocks.end(),
                             [&](const Block& blk) { return blk.name == name; });
      if (it == blocks.end()) fail(cpath + ".blocks", "unknown block '" + name + "'");
      clause.blocks.push_back(static_cast<int>(it - blocks.begin()));
    }
    if (clause.kind == TemplateClause::Kind::Weight) {
      const json& w = need(c, "weights", cpath);
      if (!w.is_array() || w.empty()) fail(cpath + ".weights", "expected a nonempty array");
      for (const auto& x : w) {
        if (!x.is_number_integer()) fail(cpath + ".weights", "weights must be integers");
        clause.weights.push_back(x.get<int>());
      }
    } else if (c.contains("weights")) {
      fail(cpath + ".weights", "only weight clauses take weights");
    }
    tmpl.push_back(std::move(clause));
  }
  return tmpl;
}

bool symmetry_key_supported(const std::string& key, std::string* reason) {
  std::string k;
  for (char c : key)
    if (!std::isspace(static_cast<unsigned char>(c))) k += c;
  if (k == "circle" || k == "r" || k == "line" || k == "su(2)") return true;
  if (k.rfind("torus(", 0) == 0) return true;
  if (k == "u(1)") return true; // same algebra as circle
  if (reason)
    *reason = "unsupported symmetry source '" + key +
              "': candidate enumeration is implemented for circle, line, torus(k) and su(2) "
              "only; other sources are refused rather than guessed";
  return false;
}

} // namespace

ProblemSpec parse_problem_json(const json& doc) {
  if (!doc.is_object()) fail("$", "problem file must contain a JSON object");
  ProblemSpec spec;
  spec.name = need_string(doc, "name", "$");
  if (doc.contains("description")) spec.description = doc.at("description").get<std::string>();

  const json& space = need(doc, "space", "$");
  const json& blocks = need(space, "blocks", "$.space");
  if (!blocks.is_array() || blocks.empty()) fail("$.space.blocks", "expected a nonempty array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    const std::string bpath = "$.space.blocks[" + std::to_string(i) + "]";
    const json& b = blocks[i];
    Block blk;
    blk.name = need_string(b, "name", bpath);
    blk.rows = need_int(b, "rows", bpath);
    blk.cols = need_int(b, "cols", bpath);
    if (blk.rows < 1 || blk.cols < 1) fail(bpath, "rows and cols must be positive");
    const std::string field = need_string(b, "field", bpath);
    if (field == "complex")
      blk.complex = true;
    else if (field == "real")
      blk.complex = false;
    else
      fail(bpath + ".field", "expected 'real' or 'complex'");
    spec.blocks.push_back(std::move(blk));
  }

  spec.gauge_key = need_string(doc, "gauge_group", "$");
  spec.symmetry_key = need_string(doc, "symmetry_group", "$");
  std::string reason;
  if (!symmetry_key_supported(spec.symmetry_key, &reason)) throw UnsupportedError("$.symmetry_group: " + reason);

  if (doc.contains("component_reps")) {
    const json& reps = doc.at("component_reps");
    if (!reps.is_array()) fail("$.component_reps", "expected an array of matrices");
    for (size_t i = 0; i < reps.size(); ++i)
      spec.component_reps.push_back(
          parse_matrix(reps[i], "$.component_reps[" + std::to_string(i) + "]"));
  }

  spec.action_gauge = parse_template(need(doc, "action_gauge", "$"), spec.blocks, "$.action_gauge");
  spec.action_symmetry =
      parse_template(need(doc, "action_symmetry", "$"), spec.blocks, "$.action_symmetry");

  const json& strat = need(doc, "rho_strategy", "$");
  const std::string kind = need_string(strat, "kind", "$.rho_strategy");
  if (kind == "su2_partitions") {
    spec.strategy_kind = ProblemSpec::StrategyKind::Su2Partitions;
  } else if (kind == "integer_weights" || kind == "cartan_grid" || kind == "user") {
    const std::string spath = "$.rho_strategy";
    if (kind == "user") {
      spec.strategy_kind = ProblemSpec::StrategyKind::UserList;
      spec.strategy.kind = AbelianStrategy::Kind::UserList;
      const json& cands = need(strat, "candidates", spath);
      if (!cands.is_array() || cands.empty()) fail(spath + ".candidates", "expected a nonempty array");
      for (size_t i = 0; i < cands.size(); ++i)
        spec.strategy.user.push_back(
            parse_matrix(cands[i], spath + ".candidates[" + std::to_string(i) + "]"));
    } else {
      const json& cartan = need(strat, "cartan", spath);
      if (!cartan.is_array() || cartan.empty()) fail(spath + ".cartan", "expected a nonempty array");
      for (const auto& c : cartan) {
        if (!c.is_number_integer()) fail(spath + ".cartan", "expected basis indices");
        spec.strategy.cartan.push_back(c.get<int>());
      }
      if (kind == "integer_weights") {
        spec.strategy_kind = ProblemSpec::StrategyKind::IntegerWeights;
        spec.strategy.kind = AbelianStrategy::Kind::IntegerWeights;
        const int lo = need_int(strat, "min", spath);
        const int hi = need_int(strat, "max", spath);
        if (hi < lo) fail(spath, "min must not exceed max");
        spec.strategy.ranges.assign(spec.strategy.cartan.size(),
                                    {static_cast<double>(lo), static_cast<double>(hi)});
        spec.strategy.step = 1.0;
      } else {
        spec.strategy_kind = ProblemSpec::StrategyKind::CartanGrid;
        spec.strategy.kind = AbelianStrategy::Kind::CartanGrid;
        const json& ranges = need(strat, "ranges", spath);
        if (!ranges.is_array() || ranges.size() != spec.strategy.cartan.size())
          fail(spath + ".ranges", "expected one [lo, hi] pair per cartan generator");
        for (const auto& r : ranges) {
          if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            fail(spath + ".ranges", "expected [lo, hi] pairs");
          spec.strategy.ranges.push_back({r[0].get<double>(), r[1].get<double>()});
        }
        spec.strategy.step = need_number(strat, "step", spath);
        if (!(spec.strategy.step > 0.0)) fail(spath + ".step", "step must be positive");
      }
    }
  } else {
    fail("$.rho_strategy.kind",
         "unknown kind '" + kind + "' (su2_partitions|integer_weights|cartan_grid|user)");
  }

  spec.tolerances = default_tolerances();
  if (doc.contains("tolerances")) {
    const json& tols = doc.at("tolerances");
    if (!tols.is_object()) fail("$.tolerances", "expected an object");
    for (const auto& [key, value] : tols.items()) {
      if (spec.tolerances.find(key) == spec.tolerances.end())
        fail("$.tolerances." + key, "unknown tolerance name");
      if (!value.is_number()) fail("$.tolerances." + key, "expected a number");
      spec.tolerances[key] = value.get<double>();
    }
  }

  if (doc.contains("verification")) {
    const json& v = doc.at("verification");
    if (!v.is_object()) fail("$.verification", "expected an object");
    for (const auto& [key, value] : v.items()) {
      if (key == "exp_samples")
        spec.exp_samples = value.get<int>();
      else if (key == "t_range")
        spec.t_range = value.get<double>();
      else if (key == "orbit_samples")
        spec.orbit_samples = value.get<int>();
      else if (key == "restarts")
        spec.restarts = value.get<int>();
      else if (key == "commuting_trials")
        spec.commuting_trials = value.get<int>();
      else
        fail("$.verification." + key, "unknown field");
    }
  }

  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_integer()) fail("$.seed", "expected an integer");
    spec.seed = doc.at("seed").get<std::uint64_t>();
  }
  return spec;
}

ProblemSpec parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw DomainError("problem file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_problem_json(doc);
}

json ProblemSpec::echo() const {
  json doc;
  doc["name"] = name;
  doc["description"] = description;
  json blist = json::array();
  for (const auto& b : blocks)
    blist.push_back({{"name", b.name},
                     {"rows", b.rows},
                     {"cols", b.cols},
                     {"field", b.complex ? "complex" : "real"}});
  doc["space"] = {{"blocks", blist}};
  doc["gauge_group"] = gauge_key;
  doc["symmetry_group"] = symmetry_key;
  json reps = json::array();
  for (const auto& r : component_reps) reps.push_back(matrix_to_json(r));
  doc["component_reps"] = reps;
  auto template_json = [&](const ActionTemplate& tmpl) {
    json arr = json::array();
    for (const auto& c : tmpl) {
      json cl;
      cl["op"] = clause_op_name(c.kind);
      json bl = json::array();
      for (int b : c.blocks) bl.push_back(blocks[b].name);
      cl["blocks"] = bl;
      if (c.kind == TemplateClause::Kind::Weight) cl["weights"] = c.weights;
      arr.push_back(std::move(cl));
    }
    return arr;
  };
  doc["action_gauge"] = template_json(action_gauge);
  doc["action_symmetry"] = template_json(action_symmetry);

  json strat;
  switch (strategy_kind) {
  case StrategyKind::Su2Partitions:
    strat["kind"] = "su2_partitions";
    break;
  case StrategyKind::IntegerWeights:
    strat["kind"] = "integer_weights";
    strat["cartan"] = strategy.cartan;
    strat["min"] = static_cast<long long>(strategy.ranges.front().first);
    strat["max"] = static_cast<long long>(strategy.ranges.front().second);
    break;
  case StrategyKind::CartanGrid: {
    strat["kind"] = "cartan_grid";
    strat["cartan"] = strategy.cartan;
    json ranges = json::array();
    for (auto [lo, hi] : strategy.ranges) ranges.push_back({lo, hi});
    strat["ranges"] = ranges;
    strat["step"] = strategy.step;
    break;
  }
  case StrategyKind::UserList: {
    strat["kind"] = "user";
    json cands = json::array();
    for (const auto& m : strategy.user) cands.push_back(matrix_to_json(m));
    strat["candidates"] = cands;
    break;
  }
  }
  doc["rho_strategy"] = strat;
  doc["tolerances"] = tolerances;
  doc["verification"] = {{"exp_samples", exp_samples},
                         {"t_range", t_range},
                         {"orbit_samples", orbit_samples},
                         {"restarts", restarts},
                         {"commuting_trials", commuting_trials}};
  doc["seed"] = seed;
  return doc;
}

ProblemInstance instantiate(const ProblemSpec& spec) {
  auto space = std::make_shared<const SpaceX>(spec.blocks);
  AlgebraPtr gauge = builtin_algebra(spec.gauge_key);
  AlgebraPtr symmetry = builtin_algebra(spec.symmetry_key);
  const double rep_tol = spec.tol("rep_property");
  try {
    LinearAction act_g(gauge, space, spec.action_gauge, rep_tol);
    LinearAction act_s(symmetry, space, spec.action_symmetry, rep_tol);
    return ProblemInstance{spec, space, gauge, symmetry, std::move(act_g), std::move(act_s)};
  } catch (const DomainError& e) {
    throw DomainError(std::string("action template: ") + e.what());
  }
}

std::vector<HomCandidate> enumerate_candidates(const ProblemInstance& inst) {
  const ProblemSpec& spec = inst.spec;
  std::vector<HomCandidate> cands;
  if (spec.strategy_kind == ProblemSpec::StrategyKind::Su2Partitions) {
    if (inst.symmetry->name() != "su(2)")
      throw DomainError("rho_strategy su2_partitions requires symmetry_group su(2)");
    const std::string& g = inst.gauge->name();
    if (g.rfind("u(", 0) != 0)
      throw DomainError("rho_strategy su2_partitions requires gauge_group u(n)");
    const int n = std::stoi(g.substr(2, g.size() - 3));
    cands = enumerate_su2_to_un(n);
  } else if (inst.symmetry->dim() == 1) {
    cands = onedim_candidates(inst.symmetry, inst.gauge, spec.strategy);
  } else {
    cands = abelian_candidates(inst.symmetry, inst.gauge, spec.strategy);
  }
  std::sort(cands.begin(), cands.end(),
            [](const HomCandidate& a, const HomCandidate& b) { return a.label < b.label; });
  return cands;
}

namespace {

std::string hash_hex(const std::string& s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, CounterRng::fnv1a64(s));
  return buf;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

} // namespace

RunReport run_pipeline(const ProblemSpec& spec, Stage stage) {
  RunReport report;
  json& doc = report.doc;

  const json echo = spec.echo();
  doc["report_version"] = kReportVersion;
  doc["tool"] = {{"name", "modsym"}, {"version", kVersion}};
  doc["problem"] = echo;
  doc["problem_hash"] = hash_hex(echo.dump());
  doc["seed"] = spec.seed;
  doc["stage"] = static_cast<int>(stage);
  doc["notes"] = {
      {"orbit_membership", "a true verdict certifies membership (an explicit witness was found); "
                           "a false verdict is evidence only, from local optimization with "
                           "restarts"},
      {"components", "component representatives are user input, one per non-identity connected "
                     "component of the symmetry group; with none supplied the verdict covers the "
                     "identity component only"}};
  json warnings = json::array();

  const ProblemInstance inst = instantiate(spec);
  CounterRng root(spec.seed, "modsym-pipeline");

  // Scope label per the theorem hypotheses: the criterion is two-sided for
  // compact G (Theorem) and for one-dimensional S (Proposition).
  const bool g_compact = catalog_key_is_compact(spec.gauge_key);
  const bool outside = !g_compact && inst.symmetry->dim() >= 2;
  doc["scope"] = {
      {"outside_theorem_hypotheses", outside},
      {"note", outside ? "gauge group is noncompact and dim Lie(S) >= 2: the linear criterion "
                         "is outside the proven hypotheses; the one-dimensional result applies "
                         "only when dim Lie(S) = 1"
                       : (g_compact ? "compact gauge group: two-sided criterion"
                                    : "one-dimensional symmetry source: two-sided criterion "
                                      "(one-parameter result)")}};

  json hyp;
  hyp["action_gauge_rep_residual"] = inst.act_gauge.rep_property_residual();
  hyp["action_symmetry_rep_residual"] = inst.act_symmetry.rep_property_residual();
  CounterRng commuting_rng = root.substream("commuting");
  const CommutingReport comm =
      check_commuting(inst.act_gauge, inst.act_symmetry, spec.commuting_trials, commuting_rng,
                      spec.tol("commute_group"), spec.tol("commute_algebra"));
  hyp["commuting"] = {{"group_residual", comm.group_residual},
                      {"algebra_residual", comm.algebra_residual},
                      {"trials", comm.trials},
                      {"pass", comm.pass}};
  doc["hypotheses"] = hyp;
  report.hypotheses_ok = comm.pass;
  if (!comm.pass) {
    warnings.push_back("commuting check failed; downstream stages aborted");
    doc["warnings"] = warnings;
    doc["summary"] = {{"aborted", true}};
    return report;
  }

  if (stage < Stage::Homs) {
    doc["warnings"] = warnings;
    doc["summary"] = {{"aborted", false}};
    return report;
  }

  const std::vector<HomCandidate> cands = enumerate_candidates(inst);
  json jcands = json::array();
  int nontrivial = 0;
  bool all_verified = true;
  int verified_count = 0;

  for (const auto& rho : cands) {
    json jc;
    jc["label"] = rho.label;
    jc["hom"] = {{"residual", rho.vacuously_hom() ? 0.0 : rho.hom_residual()},
                 {"check", rho.vacuously_hom() ? "trivial" : "checked"},
                 {"matrix", matrix_to_json(rho.matrix)}};

    if (stage >= Stage::Solve) {
      SymmetricSubspace sub =
          trivial_solution_filter(solve_symmetric(inst.act_symmetry, inst.act_gauge, rho,
                                                  spec.tol("nullspace")),
                                  spec.tol("nullspace"));
      json jsolve;
      jsolve["dim"] = sub.dim();
      jsolve["gap_ratio"] = sub.gap_ratio;
      jsolve["residual"] = sub.residual;
      jsolve["singular_values"] = vector_to_json(sub.singular_values);
      json basis = json::array();
      for (int v = 0; v < sub.dim(); ++v) basis.push_back(vector_to_json(sub.basis.col(v)));
      jsolve["basis"] = basis;
      jsolve["note"] = sub.note;
      jsolve["warnings"] = sub.warnings;
      for (const auto& w : sub.warnings)
        warnings.push_back("candidate " + rho.label + ": " + w);
      jc["solve"] = jsolve;
      if (sub.dim() > 0) ++nontrivial;

      if (stage >= Stage::Verify && sub.dim() > 0) {
        VerifyOptions vopts;
        vopts.exp_samples = spec.exp_samples;
        vopts.t_range = spec.t_range;
        vopts.orbit_samples = spec.orbit_samples;
        vopts.restarts = spec.restarts;
        vopts.exp_pass = spec.tol("exp_path_pass");
        vopts.orbit_pass = spec.tol("orbit_pass");
        json jverify = json::array();
        for (int v = 0; v < sub.dim(); ++v) {
          CounterRng vrng = root.substream("verify:" + rho.label + ":" + std::to_string(v));
          const PointA A{inst.space, sub.basis.col(v)};
          const FixedPointReport fp = verify_fixed_point(
              inst.act_symmetry, inst.act_gauge, rho, A, spec.component_reps, vopts, vrng);
          json jv;
          jv["vector"] = v;
          jv["exp_path"] = {{"samples", fp.exp_path.samples},
                            {"t_range", fp.exp_path.t_range},
                            {"max_residual", fp.exp_path.max_residual}};
          json jorb = json::array();
          for (const auto& s : fp.orbit_residuals)
            jorb.push_back(
                {{"t", s.t}, {"residual", s.residual}, {"member", s.member}});
          jv["orbit_samples"] = jorb;
          json jcomp;
          jcomp["identity_only"] = fp.components.identity_only;
          jcomp["all_pass"] = fp.components.all_pass;
          json jres = json::array();
          for (const auto& c : fp.components.results)
            jres.push_back({{"residual", c.residual}, {"pass", c.pass}});
          jcomp["results"] = jres;
          jv["components"] = jcomp;
          jv["verdict"] = fp.verdict ? "pass" : "fail";
          all_verified = all_verified && fp.verdict;
          ++verified_count;
          jverify.push_back(std::move(jv));
        }
        jc["verify"] = jverify;
      }

      if (stage >= Stage::Stabilizer && sub.dim() > 0) {
        json jstabs = json::array();
        for (int v = 0; v < sub.dim(); ++v) {
          const PointA A{inst.space, sub.basis.col(v)};
          const StabilizerAlgebra st =
              stabilizer_algebra(inst.act_symmetry, inst.act_gauge, A, spec.tol("nullspace"));
          json js;
          js["vector"] = v;
          js["dim"] = st.dim();
          json sbasis = json::array();
          for (int k = 0; k < st.dim(); ++k) sbasis.push_back(vector_to_json(st.basis.col(k)));
          js["basis"] = sbasis;
          json jwit = json::array();
          for (const auto& w : st.witnesses) jwit.push_back(vector_to_json(w));
          js["witnesses"] = jwit;
          js["witness_residuals"] = st.witness_residuals;
          js["bracket_residual"] = st.bracket_residual;
          js["closed"] = st.bracket_residual <= spec.tol("bracket_closure");
          js["warnings"] = st.warnings;
          for (const auto& w : st.warnings)
            warnings.push_back("stabilizer " + rho.label + "#" + std::to_string(v) + ": " + w);
          jstabs.push_back(std::move(js));
        }
        jc["stabilizers"] = jstabs;
      }
    }
    jcands.push_back(std::move(jc));
  }

  doc["candidates"] = jcands;
  doc["summary"] = {{"aborted", false},
                    {"n_candidates", cands.size()},
                    {"n_nontrivial", stage >= Stage::Solve ? json(nontrivial) : json()},
                    {"all_verified", stage >= Stage::Verify && verified_count > 0
                                         ? json(all_verified)
                                         : json()}};
  doc["warnings"] = warnings;
  return report;
}

std::string RunReport::to_json() const { return doc.dump(2) + "\n"; }

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "modsym report (version " << doc.at("report_version").get<std::string>() << ", tool "
     << doc.at("tool").at("version").get<std::string>() << ")\n";
  os << "problem: " << doc.at("problem").at("name").get<std::string>() << "  ["
     << doc.at("problem_hash").get<std::string>() << "]\n";
  os << "seed: " << doc.at("seed").get<std::uint64_t>() << "\n";
  const auto& scope = doc.at("scope");
  os << "scope: " << scope.at("note").get<std::string>() << "\n";
  const auto& comm = doc.at("hypotheses").at("commuting");
  os << "commuting check: " << (comm.at("pass").get<bool>() ? "pass" : "FAIL")
     << " (group " << fmt_double(comm.at("group_residual").get<double>()) << ", algebra "
     << fmt_double(comm.at("algebra_residual").get<double>()) << ")\n";
  if (!doc.contains("candidates")) {
    if (doc.at("summary").value("aborted", false)) os << "aborted\n";
    return os.str();
  }
  for (const auto& jc : doc.at("candidates")) {
    os << "\nrho " << jc.at("label").get<std::string>() << "  (hom residual "
       << fmt_double(jc.at("hom").at("residual").get<double>()) << ", "
       << jc.at("hom").at("check").get<std::string>() << ")\n";
    if (jc.contains("solve")) {
      const auto& s = jc.at("solve");
      os << "  nullspace dim " << s.at("dim").get<int>() << ", residual "
         << fmt_double(s.at("residual").get<double>()) << ", gap ratio "
         << fmt_double(s.at("gap_ratio").get<double>()) << "\n";
      for (const auto& w : s.at("warnings")) os << "  warning: " << w.get<std::string>() << "\n";
    }
    if (jc.contains("verify"))
      for (const auto& jv : jc.at("verify"))
        os << "  vector " << jv.at("vector").get<int>() << ": exp-path "
           << fmt_double(jv.at("exp_path").at("max_residual").get<double>()) << " -> "
           << jv.at("verdict").get<std::string>() << "\n";
    if (jc.contains("stabilizers"))
      for (const auto& js : jc.at("stabilizers"))
        os << "  stabilizer of vector " << js.at("vector").get<int>() << ": dim "
           << js.at("dim").get<int>() << ", bracket residual "
           << fmt_double(js.at("bracket_residual").get<double>())
           << (js.at("closed").get<bool>() ? " (closed)" : " (NOT closed)") << "\n";
  }
  const auto& summary = doc.at("summary");
  os << "\nsummary: " << summary.dump() << "\n";
  return os.str();
}

} // namespace modsym
