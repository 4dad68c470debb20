#include "projrec/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace projrec::cli {

namespace {

// Stable per-stage seed: FNV-1a of the stage name mixed with the scene seed.
std::uint64_t stage_seed(const Scene& s, const std::string& stage) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : stage) h = (h ^ ch) * 1099511628211ULL;
  return h ^ s.config.seed;
}

Json check_json(const std::string& name, const Json& value, const Json& threshold, const char* relation, bool pass) {
  return {{"name", name}, {"value", value}, {"threshold", threshold}, {"relation", relation}, {"pass", pass}};
}

Json epipole_json(const EpipolePair& e) { return {{"e1", to_json(e.e1)}, {"e2", to_json(e.e2)}}; }

Json dimension_json(const DimensionReport& r) {
  return {{"m", r.m},
          {"c_total", r.c_total},
          {"n", r.n},
          {"coefficient_count", r.coefficient_count},
          {"lower_bound", r.lower_bound},
          {"class_threshold", r.class_threshold},
          {"threshold_met", r.threshold_met}};
}

Json isolation_json(const IsolationReport& r) {
  return {{"tangent_dim", r.tangent_dim},
          {"restricted_rank", r.restricted_rank},
          {"smallest_singular_value", r.smallest_singular_value},
          {"largest_singular_value", r.largest_singular_value},
          {"isolated", r.isolated}};
}

Json fundamental_json(const FundamentalMatrix& f) { return {{"m", f.m}, {"k", f.k}, {"entries", to_json(f.entries)}}; }

// Components whose images are quadric hypersurfaces: the Kruppa setting.
std::vector<const Component*> kruppa_components(const Scene& s) {
  std::vector<const Component*> out;
  for (const auto& c : s.components)
    if (c.x.d == 2 && c.x.n == s.m() - 2) out.push_back(&c);
  if (out.empty()) throw ConfigError("scene has no degree-2 components of dimension m-2");
  return out;
}

struct KruppaSetup {
  KruppaState truth;
  KruppaSystem system;
};

KruppaSetup kruppa_setup(const Scene& s) {
  std::vector<std::pair<DualPolynomial, DualPolynomial>> duals;
  for (const Component* c : kruppa_components(s)) duals.push_back(image_duals(s.pair, c->x));
  KruppaState truth = kruppa_state(s.pair);
  KruppaSystem system = make_kruppa_system(s.m(), std::move(duals), truth.e1, stage_seed(s, "kruppa"));
  return {std::move(truth), std::move(system)};
}

CVector perturbed(const CVector& x, double rel, Rng& rng) {
  const CVector r = rng.vector(static_cast<int>(x.size()));
  return x + rel * x.norm() * r / r.norm();
}

CMatrix perturbed(const CMatrix& x, double rel, Rng& rng) {
  const CMatrix r = rng.matrix(static_cast<int>(x.rows()), static_cast<int>(x.cols()));
  return x + rel * x.norm() * r / r.norm();
}

// Points spanning a (count-1)-plane: samples of X when they span one,
// otherwise ambient points.
CMatrix spanning_points(const ParametricVariety& x, int count, Rng& rng) {
  CMatrix pts = sample_points(x, count, rng);
  if (numeric_rank(pts) < count) pts = rng.matrix(x.m + 1, count);
  return pts;
}

FundamentalMatrix read_fundamental(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  // Either a bare {m, k, entries} or a fundamental report.
  if (j.contains("orders")) {
    const int m = j.at("m").get<int>();
    Json found;
    for (const auto& o : j.at("orders"))
      if (o.at("k").get<int>() == m - 1) found = o;
    if (found.is_null()) throw ConfigError(path + ": report has no order m-1 matrix");
    j = std::move(found);
  }
  if (!j.contains("m") || !j.contains("k") || !j.contains("entries"))
    throw ConfigError(path + ": expected fields m, k, entries");
  return FundamentalMatrix(j.at("m").get<int>(), j.at("k").get<int>(), matrix_from_json(j.at("entries")));
}

}  // namespace

Report::Report(std::string command) { body_["command"] = std::move(command); }

void Report::add(Json check) {
  pass_ = pass_ && check.at("pass").get<bool>();
  checks_.push_back(std::move(check));
}

bool Report::below(const std::string& name, double value, double threshold) {
  const bool ok = value < threshold;
  add(check_json(name, value, threshold, "<", ok));
  return ok;
}

bool Report::above(const std::string& name, double value, double threshold) {
  const bool ok = value > threshold;
  add(check_json(name, value, threshold, ">", ok));
  return ok;
}

bool Report::equal(const std::string& name, long long value, long long expected) {
  const bool ok = value == expected;
  add(check_json(name, value, expected, "==", ok));
  return ok;
}

bool Report::holds(const std::string& name, bool value) {
  add(check_json(name, value, true, "==", value));
  return value;
}

Json Report::finish() const {
  Json out = body_;
  out["checks"] = checks_;
  bool ok = pass_;
  if (!all_finite(body_)) {
    out["checks"].push_back(check_json("finite", false, true, "==", false));
    ok = false;
  }
  out["pass"] = ok;
  return out;
}

Report cmd_generate(const Scene& s) {
  Report r("generate");
  // The output is itself a scene file: later commands accept it as --config.
  r.body().update(scene_to_json(s));
  Rng rng(stage_seed(s, "generate"));
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const Component& c = s.components[i];
    const CMatrix pts = sample_points(c.x, 16, rng);
    double y1 = 0.0, y2 = 0.0, x = 0.0;
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      y1 = std::max(y1, c.cones.y1.residual(s.pair.first.entries() * pts.col(j)));
      y2 = std::max(y2, c.cones.y2.residual(s.pair.second.entries() * pts.col(j)));
      x = std::max(x, c.cones.x_implicit.residual(pts.col(j)));
    }
    const std::string tag = "component" + std::to_string(i) + ".";
    r.below(tag + "y1_model", y1, s.tol("model"));
    r.below(tag + "y2_model", y2, s.tol("model"));
    r.below(tag + "x_model", x, s.tol("model"));
  }
  return r;
}

Report cmd_fundamental(const Scene& s, const RunOptions& o) {
  const int m = s.m();
  if (o.order != 0 && (o.order < 2 || o.order > m - 1)) throw ConfigError("--order must lie in [2, m-1]");
  Report r("fundamental");
  const EpipolePair ep = epipoles(s.pair.first, s.pair.second);
  r.body()["m"] = m;
  r.body()["epipoles"] = epipole_json(ep);
  r.body()["orders"] = Json::array();
  Rng rng(stage_seed(s, "fundamental"));
  for (int k = 2; k <= m - 1; ++k) {
    if (o.order != 0 && k != o.order) continue;
    const FundamentalMatrix f = fundamental(s.pair.first, s.pair.second, k);
    const RankProfile rp = rank_profile(f, s.tol("rank"));
    double worst = 0.0;
    for (const auto& c : s.components)
      for (int t = 0; t < 10; ++t) {
        const CMatrix w = spanning_points(c.x, m - k, rng);
        const CorrespondenceResidual cr = correspondence_residual(
            f, wedge_columns(s.pair.first.entries() * w), wedge_columns(s.pair.second.entries() * w), ep.e2);
        worst = std::max(worst, cr.distance);
      }
    Json entry = fundamental_json(f);
    entry["rows"] = f.entries.rows();
    entry["cols"] = f.entries.cols();
    entry["rank"] = {{"observed", rp.observed}, {"expected", rp.expected}};
    entry["singular_values"] = to_json(rp.singular_values);
    entry["space_dimension"] = space_dimension(m, k);
    entry["correspondence_residual"] = worst;
    if (m == 3) entry["classical"] = to_json(classical_fundamental(f));
    r.body()["orders"].push_back(std::move(entry));
    const std::string tag = "order" + std::to_string(k) + ".";
    r.equal(tag + "rank", rp.observed, rp.expected);
    r.below(tag + "correspondence", worst, s.tol("correspondence"));
  }
  return r;
}

Report cmd_kruppa_check(const Scene& s) {
  const int m = s.m();
  Report r("kruppa-check");
  const KruppaSetup k = kruppa_setup(s);
  const int count = static_cast<int>(k.system.duals.size());
  r.body()["m"] = m;
  r.body()["components"] = count;

  const auto& [phi1, phi2] = k.system.duals.front();
  const KruppaCoefficients coeffs = kruppa_coefficients(k.truth.f, k.truth.e1, phi1, phi2, k.system);
  r.body()["coefficient_count"] = coeffs.a.size();
  r.equal("coefficient_count", coeffs.a.size(), monomial_count(m - 1, 2));

  Json per = Json::array();
  double classical_worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto& [p1, p2] = k.system.duals[static_cast<std::size_t>(i)];
    const KruppaCoefficients c = kruppa_coefficients(k.truth.f, k.truth.e1, p1, p2, k.system);
    Json entry{{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"residual", proportionality_residual(c.a, c.b)}};
    if (m == 3) {
      const Component* comp = kruppa_components(s)[static_cast<std::size_t>(i)];
      const CMatrix c1 = dual_quadric(hypersurface_quadric(comp->cones.y1_param)).Q;
      const CMatrix c2 = dual_quadric(hypersurface_quadric(comp->cones.y2_param)).Q;
      const double cr = classical_kruppa_residual(classical_fundamental(k.truth.f), k.truth.e2, c1, c2);
      entry["classical_residual"] = cr;
      classical_worst = std::max(classical_worst, cr);
    }
    per.push_back(std::move(entry));
  }
  r.body()["per_component"] = std::move(per);

  const double res = kruppa_residual(k.truth.f, k.truth.e1, k.system);
  Rng rng(stage_seed(s, "kruppa-negative"));
  const FundamentalMatrix scrambled(m, 2, rng.matrix(m, m) * k.truth.f.entries);
  const double neg = kruppa_residual(scrambled, k.truth.e1, k.system);
  r.body()["kruppa_residual"] = res;
  r.body()["negative_control"] = neg;
  r.below("kruppa_residual", res, s.tol("kruppa"));
  r.above("negative_control", neg, s.tol("negative"));
  if (m == 3) {
    r.body()["classical_residual"] = classical_worst;
    r.below("classical_residual", classical_worst, s.tol("classical"));
  }
  r.body()["dimension"] = dimension_json(dimension_report(m, 2 * count));
  r.body()["isolation"] = isolation_json(isolation_test(k.truth, k.system));
  r.body()["fundamental"] = fundamental_json(k.truth.f);
  return r;
}

Report cmd_kruppa_solve(const Scene& s, const RunOptions& o) {
  if (o.trials < 1) throw ConfigError("--trials must be positive");
  Report r("kruppa-solve");
  const KruppaSetup k = kruppa_setup(s);
  const double rel = s.tol("perturbation");
  r.body()["m"] = s.m();
  r.body()["perturbation"] = rel;
  r.body()["dimension"] = dimension_json(dimension_report(s.m(), 2 * static_cast<int>(k.system.duals.size())));
  Json trials = Json::array();
  int recovered = 0;
  for (int t = 0; t < o.trials; ++t) {
    Rng rng(stage_seed(s, "kruppa-solve") + static_cast<std::uint64_t>(t));
    KruppaState init = k.truth;
    init.e1 = perturbed(init.e1, rel, rng);
    init.f.entries = perturbed(init.f.entries, rel, rng);
    init.e2 = perturbed(init.e2, rel, rng);
    const SolveResult sr = kruppa_solve(init, k.system, s.config.solver);
    const double dist = proj_distance(flatten(sr.solution.f.entries), flatten(k.truth.f.entries));
    const bool ok = sr.record.status == SolverStatus::converged && dist < s.tol("basin_distance");
    recovered += ok;
    trials.push_back({{"status", to_string(sr.record.status)},
                      {"iterations", sr.record.iterations},
                      {"residuals", sr.record.residuals},
                      {"final_residual", sr.record.final_residual},
                      {"valid", sr.record.valid},
                      {"isolation", isolation_json(sr.record.isolation)},
                      {"distance_to_truth", dist},
                      {"recovered", ok}});
  }
  r.body()["trials"] = std::move(trials);
  r.body()["recovered"] = recovered;
  r.above("basin_fraction", static_cast<double>(recovered) / o.trials, s.tol("basin_fraction") - 1e-12);
  return r;
}

Report cmd_recover(const Scene& s) {
  Report r("recover");
  const FundamentalMatrix f = reduced_fundamental(s.pair.first, s.pair.second);
  const CanonicalPair cp = canonical_pair(f);
  const double trip =
      proj_distance(flatten(reduced_fundamental(cp.pair.first, cp.pair.second).entries), flatten(f.entries));
  const Alignment al = align_pair(s.pair);
  r.body()["m"] = s.m();
  r.body()["fundamental"] = fundamental_json(f);
  r.body()["canonical"] = {{"H", to_json(cp.H)}, {"e2", to_json(cp.e2)}};
  r.body()["alignment"] = {{"lambda", to_json(al.lambda)},
                           {"v", to_json(al.v)},
                           {"eq1_residual", al.eq1_residual},
                           {"eq2_residual", al.eq2_residual}};
  r.body()["round_trip"] = trip;
  r.below("round_trip", trip, s.tol("round_trip"));
  r.below("eq1", al.eq1_residual, s.tol("alignment"));
  r.below("eq2", al.eq2_residual, s.tol("alignment"));
  r.holds("equivalent", pairs_equivalent(s.pair, cp.pair));
  return r;
}

Report cmd_recover(const FundamentalMatrix& f, const RunOptions&) {
  Report r("recover");
  const CanonicalPair cp = canonical_pair(f);
  const double trip =
      proj_distance(flatten(reduced_fundamental(cp.pair.first, cp.pair.second).entries), flatten(f.entries));
  r.body()["m"] = f.m;
  r.body()["fundamental"] = fundamental_json(f);
  r.body()["canonical"] = {{"H", to_json(cp.H)}, {"e2", to_json(cp.e2)}};
  r.body()["round_trip"] = trip;
  r.below("round_trip", trip, default_tolerances().at("round_trip"));
  return r;
}

Report cmd_reconstruct(const Scene& s, const RunOptions& o) {
  if (o.fibers < 1) throw ConfigError("--fibers must be positive");
  Report r("reconstruct");
  LabelThresholds th;
  th.true_tol = s.tol("true_label");
  th.ghost_tol = s.tol("ghost_label");
  th.collision_tol = s.tol("collision");
  r.body()["m"] = s.m();
  r.body()["census"] = Json::array();
  bool any = false;
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const Component& c = s.components[i];
    if (c.x.n != 1 || s.m() != 3) continue;
    any = true;
    const std::string tag = "component" + std::to_string(i) + ".";
    const int d = c.x.d;
    try {
      const CensusSummary cs = component_census(c.cones, o.fibers, stage_seed(s, "census") + i, th);
      r.body()["census"].push_back({{"component", i},
                                    {"degree", cs.degree},
                                    {"fibers", cs.fibers},
                                    {"clean", cs.clean},
                                    {"discarded", cs.discarded},
                                    {"matching", cs.matching},
                                    {"modal_counts", {cs.modal_true, cs.modal_ghost}},
                                    {"expected_counts", {d, d * (d - 1)}},
                                    {"candidates_per_fiber", d * d},
                                    {"fraction", cs.fraction},
                                    {"true_points", cs.true_points},
                                    {"refit_distance", cs.refit_distance},
                                    {"degree_two_caveat", cs.degree_two_caveat}});
      r.holds(tag + "modal_counts", cs.modal_matches);
      r.above(tag + "fraction", cs.fraction, s.tol("census_fraction") - 1e-12);
      r.below(tag + "refit", cs.refit_distance, s.tol("refit"));
    } catch (const NumericalError& e) {
      r.body()["census"].push_back({{"component", i}, {"error", e.what()}});
      r.holds(tag + "clean_fibers", false);
    }
  }
  if (!any) throw ConfigError("reconstruct needs curve components in P^3");
  return r;
}

Report cmd_diagnose(int m, int c_total) {
  if (m < 3 || c_total < 1) throw ConfigError("diagnose expects m >= 3 and c >= 1");
  Report r("diagnose");
  r.body()["dimension"] = dimension_json(dimension_report(m, c_total));
  Json dims = Json::object();
  for (int k = 2; k <= m - 1; ++k) dims[std::to_string(k)] = space_dimension(m, k);
  r.body()["space_dimension"] = std::move(dims);
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recovery of projective varieties from two unknown projections", "projrec"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tols;
  RunOptions opts;
  app.add_option("--config", config_path, "Scene or configuration JSON");
  app.add_option("--seed", seed, "Override the scene seed");
  app.add_option("--out", out_path, "Write the JSON output here instead of stdout");
  app.add_option("--tol", tols, "Override a tolerance, NAME=VALUE")->take_all();
  app.add_option("--trials", opts.trials, "Solver trials")->capture_default_str();
  app.add_option("--fibers", opts.fibers, "Census fibers")->capture_default_str();

  auto* generate = app.add_subcommand("generate", "Resolve a configuration into a scene file");
  auto* fund = app.add_subcommand("fundamental", "Fundamental matrices of every order");
  fund->add_option("--order", opts.order, "Only this order");
  auto* kcheck = app.add_subcommand("kruppa-check", "Kruppa residuals at the ground truth");
  auto* ksolve = app.add_subcommand("kruppa-solve", "Solve the Kruppa system from perturbed starts");
  auto* recover = app.add_subcommand("recover", "Canonical pair from the fundamental matrix");
  recover->add_option("--fundamental", opts.fundamental_path, "Read F from this file instead of a scene");
  auto* reconstruct = app.add_subcommand("reconstruct", "Epipolar-fiber census of the cone intersection");
  auto* diagnose = app.add_subcommand("diagnose", "Dimension report for m and total class c");
  int dm = 0, dc = 0;
  diagnose->add_option("m", dm, "Ambient dimension")->required();
  diagnose->add_option("c", dc, "Total class")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }

  try {
    Report report("");
    if (*diagnose) {
      report = cmd_diagnose(dm, dc);
    } else if (*recover && !opts.fundamental_path.empty()) {
      report = cmd_recover(read_fundamental(opts.fundamental_path), opts);
    } else {
      if (config_path.empty()) throw ConfigError("--config is required");
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open '" + config_path + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::exception& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
      SceneConfig config;
      try {
        config = parse_config(is_scene_file(j) ? j.at("config") : j);
      } catch (const Json::exception& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
      if (seed) config.seed = *seed;
      for (const auto& t : tols) override_tolerance(config, t);
      const Scene scene = build_scene(config);
      if (*generate) report = cmd_generate(scene);
      else if (*fund) report = cmd_fundamental(scene, opts);
      else if (*kcheck) report = cmd_kruppa_check(scene);
      else if (*ksolve) report = cmd_kruppa_solve(scene, opts);
      else if (*recover) report = cmd_recover(scene);
      else if (*reconstruct) report = cmd_reconstruct(scene, opts);
    }

    const Json result = report.finish();
    const std::string text = result.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + out_path + "'");
      f << text;
    }
    return result.at("pass").get<bool>() ? kOk : kCheckFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace projrec::cli
