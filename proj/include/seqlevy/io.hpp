#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqlevy/char_func.hpp"
#include "seqlevy/simulate.hpp"
#include "seqlevy/verify.hpp"

// Single-header nlohmann/json from vendor/.
#include "json.hpp"

namespace seqlevy::io {

/// Malformed configuration: JSON syntax, unknown keys, wrong types or
/// shapes. Maps to the usage exit code (64) at the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Radial region as written in configs; the seminorm index defaults to the
/// triplet's reference index when omitted.
struct RegionSpec {
  std::string kind;  // "ball" | "complement" | "shell"
  double radius = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> r;

  Region resolve(SeminormIndex default_r) const;
};

/// One selected verification test with its parameters.
struct TestSelector {
  std::string test;  // ecf|moments|independence|semigroup|infdiv|jump_count|fernique|minlos
  double t = 1.0;
  double s = 0.3;
  unsigned n = 2;
  std::vector<unsigned> n_list;
  double eps = 0.1;
  double p_index = 0.0;
  double q_index = 1.0;
  std::size_t phi = 0;
  std::size_t psi = 0;
  std::optional<RegionSpec> region;
  bool negative_control = false;
  std::optional<nlohmann::json> measure;  // finite measure for minlos
};

struct RunConfig {
  SimConfig sim;
  std::optional<CharTriplet> triplet;  // empty when domain validation failed
  std::string triplet_error;           // reason when triplet is empty
  std::vector<TestFunction> phis;
  std::vector<double> times;
  std::vector<TestSelector> tests;
  std::string output_dir;
};

LevyMeasure parse_levy_measure(const nlohmann::json& j, std::size_t dim);
nlohmann::json to_json(const LevyMeasure& nu);

CharTriplet parse_triplet(const nlohmann::json& j, std::size_t dim);
nlohmann::json to_json(const CharTriplet& triplet);

SimConfig parse_sim_config(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& cfg);

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

nlohmann::json to_json(const ValidationReport& rep);
nlohmann::json to_json(const TestReport& rep);

/// Doubles in CSV output: '.' decimal separator, 17 significant digits,
/// so values round-trip bit-faithfully.
std::string csv_double(double x);

}  // namespace seqlevy::io
