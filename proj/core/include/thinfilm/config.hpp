#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thinfilm/forcing.hpp"
#include "thinfilm/grid.hpp"
#include "thinfilm/model.hpp"
#include "thinfilm/stepper.hpp"

namespace thinfilm {

struct ModelSpec {
  std::string kind = "power-law";  // power-law | ellis
  double alpha = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double eps_reg = FluidModel::kDefaultEps;

  FluidModel build() const;
};

struct ForceSpec {
  std::string kind = "none";  // none | exp | power | static | constant | tabulated
  double kappa = 1.0;
  double beta = 2.0;
  double A = 1.0;
  double B = 0.0;
  double m = 10.0;
  double f0 = 0.0;
  std::vector<double> table_t;
  std::vector<double> table_g;

  Force build(double length) const;
};

struct OutputSpec {
  std::string csv;
  std::string svg_profiles;
  std::string svg_error;
  std::string report_json;
  std::string report_text;
};

/// Everything needed to reproduce one run. Text form is flat `key = value`
/// lines with dotted keys and `#` comments.
struct ExperimentConfig {
  std::string name = "custom";
  ModelSpec model;
  double L = 100.0;
  std::size_t N = 200;
  CosineProfile u0{3.0, 0.0, 10.0};
  ForceSpec force;
  StepControl control;
  OutputSpec output;
  std::uint64_t seed = 1;

  /// Assigns one key; throws ConfigError naming the key on unknown keys or
  /// unparsable values.
  void set(const std::string& key, const std::string& value);
  /// Applies `key=value` strings in order.
  void apply_overrides(const std::vector<std::string>& assignments);

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig parse(const std::string& text, ExperimentConfig base);
  static ExperimentConfig load(const std::string& path);
  std::string to_text() const;

  /// Builds every component once, so all module invariants are checked.
  void validate() const;

  Grid grid() const { return Grid(L, N); }
  Field initial_field() const;
  FluidModel fluid() const { return model.build(); }
  Force forcing() const { return force.build(L); }
};

std::vector<std::string> preset_names();
/// One-line description of a preset.
std::string preset_summary(const std::string& name);
ExperimentConfig preset(const std::string& name);

}  // namespace thinfilm
