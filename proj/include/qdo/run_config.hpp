#pragma once

// JSON run configuration:
//
//   {
//     "oscillator": {"omega_a": 1, "omega_b": 3, "lambda": 1},
//     "couplings":  {"h11": 1, "h22": 2, "h33": 1, "h44": 4,
//                    "h12": {"re": 1, "im": 0}, "h13": {"re": 1, "im": 0.125}, ...},
//     "initial":    {"a1": 0.5, "b1": 0.5, "a2": 0.5, "b2": 0.5, "a12": 0, "b12": 0},
//     "model":      "simplified",
//     "integrator": {"dt": 1e-3, "t_end": 10, "sample_stride": 1, "method": "rk4",
//                    "adapt_tol": 1e-9},
//     "outputs":    {"csv_path": "out.csv", "svg_path": "out.svg", "precision": 9}
//   }
//
// Every section and key is optional. Omitted couplings are zero except
// Re h12 = Re h24 = 1. Unknown keys are rejected with ConfigError.

#include <string>

#include <json.hpp>

#include "qdo/integrator.hpp"
#include "qdo/lindblad_dynamics.hpp"
#include "qdo/simon_model.hpp"

namespace qdo {

struct OutputConfig {
  std::string csv_path;  // empty: standard output
  std::string svg_path;  // empty: no chart
  int precision = 9;
};

struct RunConfig {
  OscillatorParams oscillator;
  LindbladCouplings couplings = default_couplings();
  SimonParams initial;
  Model model = Model::Simplified;
  IntegratorConfig integrator;
  OutputConfig outputs;

  static LindbladCouplings default_couplings();

  /// Range checks beyond parsing: energies, integrator settings, precision.
  void validate() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Replaces the scalar at a dotted path ("couplings.h12.re", "oscillator.omega_b").
/// The alias "r" sets omega_b = r * omega_a and leaves the couplings unchanged;
/// "h12r" is short for couplings.h12.re.
/// Throws ConfigError for an unknown path or a non-finite value.
RunConfig with_parameter(const RunConfig& cfg, const std::string& path, double value);

}  // namespace qdo
