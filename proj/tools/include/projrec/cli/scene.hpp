#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <projrec/kruppa.hpp>
#include <projrec/reconstruction.hpp>

#include "projrec/cli/json_io.hpp"

namespace projrec::cli {

// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarietySpec {
  std::string kind;  // conic3d, rational_normal_curve, quadric
  int degree = 0;
  std::optional<std::uint64_t> seed;
  std::optional<CMatrix> coefficients;
};

struct OperatorSpec {
  std::optional<std::uint64_t> seed;
  std::optional<CMatrix> matrix;
};

struct SceneConfig {
  int m = 3;
  std::uint64_t seed = 1;
  std::vector<VarietySpec> varieties;
  std::vector<OperatorSpec> projections;  // exactly two
  std::map<std::string, double> tolerances;
  SolverOptions solver;
};

// Thresholds every check is measured against; overridable by name.
std::map<std::string, double> default_tolerances();

SceneConfig parse_config(const Json& j);
Json config_to_json(const SceneConfig& c);

// Applies NAME=VALUE; rejects unknown names.
void override_tolerance(SceneConfig& c, const std::string& assignment);

struct Component {
  std::string kind;
  ParametricVariety x;
  SceneCones cones;
};

struct Scene {
  SceneConfig config;
  ProjectionPair pair;
  std::vector<Component> components;

  int m() const { return config.m; }
  double tol(const std::string& name) const { return config.tolerances.at(name); }
};

// Draws everything not given explicitly from the configured seeds.
Scene build_scene(const SceneConfig& c);

// Scene files carry the fully resolved config (explicit operators and
// coefficients) and rebuild to the same scene.
Json scene_to_json(const Scene& s);
bool is_scene_file(const Json& j);

}  // namespace projrec::cli
