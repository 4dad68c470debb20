#include "projrec/cli/scene.hpp"

#include <utility>

namespace projrec::cli {

namespace {

constexpr const char* kSceneFormat = "projrec-scene";

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t seed_from(const Json& j) {
  if (!j.is_number_integer()) throw ConfigError("seeds must be integers");
  return j.get<std::uint64_t>();
}

// (n, d) of a variety kind in P^m.
std::pair<int, int> kind_shape(const VarietySpec& v, int m) {
  if (v.kind == "conic3d") return {1, 2};
  if (v.kind == "rational_normal_curve") return {1, v.degree};
  if (v.kind == "quadric") return {m - 2, 2};
  throw ConfigError("unknown variety kind '" + v.kind + "'");
}

void validate(const SceneConfig& c) {
  if (c.m < 3) throw ConfigError("m must be at least 3");
  if (c.projections.size() != 2) throw ConfigError("exactly two projections are required");
  if (c.varieties.empty()) throw ConfigError("at least one variety is required");
  for (const auto& p : c.projections)
    if (p.matrix && (p.matrix->rows() != c.m || p.matrix->cols() != c.m + 1))
      throw ConfigError("projection matrices must be m x (m+1)");
  for (const auto& v : c.varieties) {
    const auto [n, d] = kind_shape(v, c.m);
    if (v.kind == "quadric" && c.m < 4)
      throw ConfigError("quadric kind needs m >= 4: a quadric hypersurface of P^3 has codimension 1 < 2");
    if (v.kind == "rational_normal_curve" && (d < 1 || d > c.m))
      throw ConfigError("rational_normal_curve degree must lie in [1, m]");
    if (n > c.m - 2) throw ConfigError("varieties must have dimension at most m-2");
    if (v.coefficients &&
        (v.coefficients->rows() != c.m + 1 || v.coefficients->cols() != monomial_count(n + 1, d)))
      throw ConfigError("coefficient matrix of a " + v.kind + " has the wrong shape");
  }
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {
      {"model", 1e-8},          // fitted image models at projected samples
      {"rank", 1e-8},           // relative singular value cutoff
      {"correspondence", 1e-9},
      {"kruppa", 1e-9},
      {"classical", 1e-10},
      {"negative", 1e-3},       // negative controls must exceed this
      {"round_trip", 1e-8},
      {"alignment", 1e-9},
      {"perturbation", 1e-3},   // relative size of solver start perturbations
      {"basin_distance", 1e-6},
      {"basin_fraction", 0.9},
      {"true_label", 1e-6},
      {"ghost_label", 1e-3},
      {"collision", 1e-6},
      {"census_fraction", 0.95},
      {"refit", 1e-6},
  };
}

SceneConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  SceneConfig c;
  c.m = require(j, "m").get<int>();
  if (j.contains("seed")) c.seed = seed_from(j.at("seed"));
  c.tolerances = default_tolerances();

  for (const auto& v : require(j, "varieties")) {
    VarietySpec s;
    s.kind = require(v, "kind").get<std::string>();
    s.degree = v.value("degree", s.kind == "rational_normal_curve" ? c.m : 2);
    if (v.contains("seed")) s.seed = seed_from(v.at("seed"));
    if (v.contains("coefficients")) s.coefficients = matrix_from_json(v.at("coefficients"));
    c.varieties.push_back(std::move(s));
  }
  if (j.contains("projections")) {
    for (const auto& p : j.at("projections")) {
      OperatorSpec s;
      if (p.is_string()) {
        if (p.get<std::string>() != "random") throw ConfigError("projection must be \"random\" or an object");
      } else {
        if (p.contains("seed")) s.seed = seed_from(p.at("seed"));
        if (p.contains("matrix")) s.matrix = matrix_from_json(p.at("matrix"));
      }
      c.projections.push_back(std::move(s));
    }
  } else {
    c.projections.resize(2);
  }
  if (j.contains("tolerances")) {
    for (const auto& [name, value] : j.at("tolerances").items()) {
      if (!c.tolerances.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
      c.tolerances[name] = value.get<double>();
    }
  }
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
    c.solver.damping = s.value("damping", c.solver.damping);
    c.solver.tolerance = s.value("tolerance", c.solver.tolerance);
    c.solver.patience = s.value("patience", c.solver.patience);
  }
  validate(c);
  return c;
}

Json config_to_json(const SceneConfig& c) {
  Json j;
  j["m"] = c.m;
  j["seed"] = c.seed;
  j["varieties"] = Json::array();
  for (const auto& v : c.varieties) {
    Json s{{"kind", v.kind}, {"degree", v.degree}};
    if (v.seed) s["seed"] = *v.seed;
    if (v.coefficients) s["coefficients"] = to_json(*v.coefficients);
    j["varieties"].push_back(std::move(s));
  }
  j["projections"] = Json::array();
  for (const auto& p : c.projections) {
    Json s = Json::object();
    if (p.seed) s["seed"] = *p.seed;
    if (p.matrix) s["matrix"] = to_json(*p.matrix);
    j["projections"].push_back(std::move(s));
  }
  j["tolerances"] = c.tolerances;
  j["solver"] = {{"max_iterations", c.solver.max_iterations},
                 {"damping", c.solver.damping},
                 {"tolerance", c.solver.tolerance},
                 {"patience", c.solver.patience}};
  return j;
}

void override_tolerance(SceneConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  if (!c.tolerances.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing characters");
    c.tolerances[name] = v;
  } catch (const std::logic_error&) {
    throw ConfigError("invalid tolerance value in '" + assignment + "'");
  }
}

Scene build_scene(const SceneConfig& config) {
  validate(config);
  SceneConfig c = config;
  const int m = c.m;
  // Derived seeds are drawn in a fixed order whether or not they are used,
  // so editing one entry never shifts the others.
  Rng master(c.seed);
  for (auto& p : c.projections) {
    const std::uint64_t s = master.next_seed();
    if (!p.seed) p.seed = s;
    if (!p.matrix) {
      Rng rng(*p.seed);
      p.matrix = rng.matrix(m, m + 1);
    }
  }
  for (auto& v : c.varieties) {
    const std::uint64_t s = master.next_seed();
    if (!v.seed) v.seed = s;
    if (!v.coefficients) {
      Rng rng(*v.seed);
      if (v.kind == "conic3d") v.coefficients = random_conic(m, rng).coeffs;
      else if (v.kind == "rational_normal_curve") v.coefficients = random_rational_curve(m, v.degree, rng).coeffs;
      else v.coefficients = random_quadric(m, rng).coeffs;
    }
  }
  const std::uint64_t cone_seed = master.next_seed();

  ProjectionPair pair(ProjectionOperator(*c.projections[0].matrix), ProjectionOperator(*c.projections[1].matrix));
  std::vector<Component> components;
  for (std::size_t i = 0; i < c.varieties.size(); ++i) {
    const VarietySpec& v = c.varieties[i];
    const auto [n, d] = kind_shape(v, m);
    ParametricVariety x(n, m, d, *v.coefficients);
    SceneCones cones = make_scene_cones(pair, x, cone_seed + 16 * i);
    components.push_back({v.kind, std::move(x), std::move(cones)});
  }
  return {std::move(c), std::move(pair), std::move(components)};
}

bool is_scene_file(const Json& j) { return j.is_object() && j.value("format", "") == kSceneFormat; }

Json scene_to_json(const Scene& s) {
  Json j;
  j["format"] = kSceneFormat;
  j["config"] = config_to_json(s.config);
  j["centers"] = {to_json(center(s.pair.first)), to_json(center(s.pair.second))};
  j["components"] = Json::array();
  for (const auto& c : s.components) {
    auto forms = [](const ImplicitVariety& v) {
      Json out = Json::array();
      for (const auto& f : v.forms) out.push_back(to_json(f));
      return Json{{"degree", v.degree}, {"forms", std::move(out)}};
    };
    j["components"].push_back({{"kind", c.kind},
                               {"n", c.x.n},
                               {"degree", c.x.d},
                               {"x_implicit", forms(c.cones.x_implicit)},
                               {"y1_implicit", forms(c.cones.y1)},
                               {"y2_implicit", forms(c.cones.y2)}});
  }
  return j;
}

}  // namespace projrec::cli
