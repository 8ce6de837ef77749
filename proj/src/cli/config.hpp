#pragma once

// Run configuration: a single JSON file with a schema_version field, strict
// key validation (unknown keys rejected), complex entries as [re, im] pairs.

#include "flq/bath.hpp"
#include "flq/harmonics.hpp"
#include "flq/models.hpp"
#include "flq/propagator.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flq::cli {

using Json = nlohmann::ordered_json;

struct NumericsConfig {
  PropagatorConfig propagator;
  HarmonicOptions harmonics;
  double t0 = 0.0;
  uint64_t seed = 12345;
};

struct EvolveConfig {
  std::vector<double> times;  // resolved absolute times
  std::string initial_state = "ground";  // or "maximally-mixed"
  std::optional<Matrix> initial_matrix;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> entries;
  std::map<std::string, Matrix> observables;
};

struct SweepAxis {
  std::string path;  // dotted config path
  std::vector<Json> values;
};

struct SweepConfig {
  std::string command;  // decompose | evolve | steady | verify
  std::vector<SweepAxis> axes;
};

struct RunConfig {
  Json raw;  // post-override document (for sweeps and echoing)
  ModelSpec model;
  std::optional<LambShiftConfig> lamb_shift;
  NumericsConfig numerics;
  std::optional<EvolveConfig> evolve;
  int steady_cycle_samples = 16;
  std::optional<SweepConfig> sweep;
  std::filesystem::path output_dir = "out";
};

// Parse + validate a config document (after --set overrides were applied).
// `base_dir` anchors relative file references (tabulated bath CSVs).
RunConfig parse_config(const Json& doc, const std::filesystem::path& base_dir);

// Load a JSON file, apply key=value overrides at dotted paths, and parse.
RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::string>& overrides);

// Apply one "dotted.path=json-value" override in place.
void apply_override(Json& doc, const std::string& assignment);

// [re, im] pairs (bare numbers accepted on input as real values).
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const char* what);

// Two-column (x, gamma) CSV with '#' comment lines.
std::vector<std::pair<double, double>> read_two_column_csv(
    const std::filesystem::path& file);

}  // namespace flq::cli
