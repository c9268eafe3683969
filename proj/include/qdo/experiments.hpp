#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdo/csv.hpp"
#include "qdo/integrator.hpp"
#include "qdo/run_config.hpp"

namespace qdo {

/// Intervals where det C_s < 0 and the located sign changes.
struct EntanglementWindows {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> crossing_taus;
};

inline constexpr double kDefaultHysteresis = 1e-8;

/// Values with |det| < hysteresis count as zero: a crossing is registered only
/// once the trace leaves the band on the other side. Crossings are placed by
/// linear interpolation between the first bracketing pair of samples. A window
/// still open at the last sample ends there.
EntanglementWindows entanglement_windows(const std::vector<double>& taus,
                                         const std::vector<double>& det_cs,
                                         double hysteresis = kDefaultHysteresis);
EntanglementWindows entanglement_windows(const Trajectory& traj,
                                         double hysteresis = kDefaultHysteresis);

enum class FigureId { Fig1, Fig2, Fig3a, Fig3b, Fig4 };

std::string_view to_string(FigureId f);
/// Accepts "1", "2", "3a", "3b", "4". Throws ConfigError otherwise.
FigureId figure_from_string(std::string_view s);

/// Figure parameters (figure_oscillator / figure_couplings), case (A) initial
/// data ((B) for 3b), simplified model, dt = 1e-3, t_end = 15, stride 10.
RunConfig figure_config(FigureId f);

/// Figure 1: tau, p2_A, p2_B. Figure 2: tau, d_decoh_A, d_decoh_B (squared
/// decoherence lengths). Figures 3a/3b: tau, A12, B12, B21, C12. Figure 4:
/// tau, det_cs_A, det_cs_B for the two initial cases (cfg.initial is ignored).
/// With closed_form, matching "<name>_closed" columns follow.
CsvTable figure_table(FigureId f, const RunConfig& cfg, bool closed_form = false);

struct FigureOptions {
  std::string out_dir = ".";
  bool with_closed_form = false;
  bool svg = false;
  nlohmann::json overrides = nlohmann::json::object();  // merge patch on figure_config
};

struct FigureOutput {
  CsvTable table;
  std::string csv_path;
  std::string svg_path;  // empty unless requested
};

/// Writes figure_<id>.csv (and .svg) into out_dir.
FigureOutput run_figure(FigureId f, const FigureOptions& opts);

/// tau, the ten coefficients, det_cs, omega_sq_A, omega_sq_B.
CsvTable trajectory_table(const Trajectory& traj);

/// Closed-form coefficients on the grid 0, dt * stride, ..., t_end. Cross
/// columns are nan when r == 1.
CsvTable closed_form_table(const RunConfig& cfg, double t_end);

struct SweepSpec {
  std::string param_path;
  std::vector<double> values;
};

/// One row per value, in input order: value, det_cs_final, det_cs_stationary,
/// det_cs_asymptotic, entangled_final, entangled_stationary, entangled_asymptotic,
/// inconsistent, windows. Unavailable quantities are nan. Rows are computed
/// concurrently.
CsvTable run_sweep(const RunConfig& cfg, const SweepSpec& sweep);

}  // namespace qdo
