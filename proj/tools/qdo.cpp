// qdo: command-line front end.
//
// Exit codes: 0 success, 1 validation failure, 2 numeric divergence,
// 3 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdo/closed_form.hpp"
#include "qdo/csv.hpp"
#include "qdo/error.hpp"
#include "qdo/experiments.hpp"
#include "qdo/run_config.hpp"
#include "qdo/svg.hpp"

namespace {

using namespace qdo;

void emit_table(const CsvTable& t, const RunConfig& cfg) {
  const std::string text = to_csv(t, cfg.outputs.precision);
  if (cfg.outputs.csv_path.empty())
    std::cout << text;
  else
    write_text_file(cfg.outputs.csv_path, text);
}

void emit_chart(const CsvTable& t, const RunConfig& cfg, const std::vector<std::string>& cols,
                const std::string& title) {
  if (cfg.outputs.svg_path.empty()) return;
  ChartOptions opts;
  opts.title = title;
  write_text_file(cfg.outputs.svg_path, render_line_chart(t, "tau", cols, opts));
}

void print_report(const ValidationReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("  %-26s %-4s %.9g %s\n", c.name.c_str(), c.passed ? "ok" : "WARN", c.value,
                c.detail.c_str());
}

void print_state(const CovarianceState& s) {
  const StateVector v = s.to_vector();
  for (std::size_t i = 0; i < kStateDim; ++i)
    std::printf("  %-4s % .9g\n", std::string(kStateNames[i]).c_str(), v[i]);
}

int cmd_validate(const std::string& path) {
  const RunConfig cfg = load_run_config(path);
  std::printf("config %s parsed\n", path.c_str());
  std::printf("initial (reduced parameters):\n");
  print_report(validate_simon(cfg.initial));
  std::printf("initial (covariance state):\n");
  print_report(validate_state(to_covariance_state(cfg.initial)));

  const PsdReport psd = psd_check(cfg.couplings);
  std::printf("coupling matrix eigenvalues: %.9g %.9g %.9g %.9g (%s)\n", psd.eigenvalues[0],
              psd.eigenvalues[1], psd.eigenvalues[2], psd.eigenvalues[3],
              psd.positive_semidefinite ? "positive semidefinite" : "WARN: not positive semidefinite");
  if (cfg.model == Model::Simplified && !cfg.couplings.in_simplified_model())
    throw ModelViolationError("couplings outside the simplified model with model = simplified");
  return 0;
}

int cmd_simulate(const std::string& path) {
  const RunConfig cfg = load_run_config(path);
  Trajectory traj = integrate(to_covariance_state(cfg.initial), cfg.oscillator, cfg.couplings,
                              cfg.integrator, cfg.model);
  const CsvTable t = trajectory_table(traj);
  emit_table(t, cfg);
  emit_chart(t, cfg, {"A11", "A22", "det_cs"}, "trajectory");

  const EntanglementWindows w = entanglement_windows(traj);
  std::fprintf(stderr, "%zu samples, %zu entanglement window(s)\n", traj.samples.size(),
               w.intervals.size());
  for (const auto& [a, b] : w.intervals) std::fprintf(stderr, "  [%.6g, %.6g]\n", a, b);
  return 0;
}

int cmd_figure(const std::string& id, const std::string& out_dir, bool closed, bool svg,
               const std::string& overrides_path) {
  FigureOptions opts;
  opts.out_dir = out_dir;
  opts.with_closed_form = closed;
  opts.svg = svg;
  if (!overrides_path.empty()) {
    std::ifstream in(overrides_path);
    if (!in) throw ConfigError("cannot open overrides file '" + overrides_path + "'");
    try {
      in >> opts.overrides;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed overrides JSON: ") + e.what());
    }
  }
  const FigureOutput out = run_figure(figure_from_string(id), opts);
  std::printf("%s (%zu rows)\n", out.csv_path.c_str(), out.table.rows.size());
  if (!out.svg_path.empty()) std::printf("%s\n", out.svg_path.c_str());
  return 0;
}

int cmd_closed_form(const std::string& path, double t_end) {
  const RunConfig cfg = load_run_config(path);
  const CsvTable t = closed_form_table(cfg, t_end);
  emit_table(t, cfg);
  emit_chart(t, cfg, {"A11", "A22", "C11", "C22"}, "closed form");
  return 0;
}

int cmd_compare(const std::string& path) {
  const RunConfig cfg = load_run_config(path);
  if (cfg.model != Model::Simplified)
    throw ConfigError("compare requires model = simplified");
  const ClosedFormParams p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);
  const Trajectory traj = integrate(to_covariance_state(cfg.initial), cfg.oscillator,
                                    cfg.couplings, cfg.integrator, cfg.model);
  const ComparisonReport rep = compare_closed_form(traj, p);

  std::printf("max |closed form - RK4| over tau in [0, %g]:\n", cfg.integrator.t_end);
  for (std::size_t i = 0; i < kStateDim; ++i) {
    const bool cross = i >= 6;
    if (cross && !rep.cross_block_available)
      std::printf("  %-4s n/a (closed form undefined for r = 1)\n",
                  std::string(kStateNames[i]).c_str());
    else
      std::printf("  %-4s %.3e%s\n", std::string(kStateNames[i]).c_str(), rep.max_abs_diff[i],
                  cross ? "  (reported only)" : "");
  }

  try {
    const CovarianceState st = stationary_state(cfg.oscillator, cfg.couplings, cfg.model);
    const CrossBlock asym = cross_block_asymptote(p);
    std::printf("cross block at tau -> inf:\n");
    std::printf("  %-4s %14s %14s\n", "", "stationary", "closed form");
    std::printf("  %-4s % .9g % .9g\n", "A12", st.A12, asym.A12);
    std::printf("  %-4s % .9g % .9g\n", "B12", st.B12, asym.B12);
    std::printf("  %-4s % .9g % .9g\n", "B21", st.B21, asym.B21);
    std::printf("  %-4s % .9g % .9g\n", "C12", st.C12, asym.C12);
  } catch (const NoStationaryStateError& e) {
    std::printf("no stationary state: %s\n", e.what());
  }
  return 0;
}

int cmd_stationary(const std::string& path) {
  const RunConfig cfg = load_run_config(path);
  const CovarianceState s = stationary_state(cfg.oscillator, cfg.couplings, cfg.model);
  std::printf("stationary state (%s model):\n", std::string(to_string(cfg.model)).c_str());
  print_state(s);
  const double det = s.C12 * s.A12 - s.B12 * s.B21;
  std::printf("det C_s (stationary)  % .9g  %s\n", det, det < 0 ? "entangled" : "separable");
  if (cfg.couplings.in_simplified_model()) {
    const ClosedFormParams p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);
    if (p.rates.gamma > 0.0) {
      const AsymptoticDeterminant a = det_cs_asymptotic(p);
      std::printf("det C_s (closed form) % .9g  %s\n", a.value,
                  a.entangled ? "entangled" : "separable");
      if ((det < 0) != a.entangled)
        std::printf("note: the two asymptotic classifications disagree\n");
    }
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& param, const std::vector<double>& values) {
  const RunConfig cfg = load_run_config(path);
  const CsvTable t = run_sweep(cfg, {param, values});
  emit_table(t, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian two-oscillator decoherence and entanglement dynamics"};
  app.require_subcommand(1);

  std::string config;
  std::string figure_id, out_dir = ".", overrides;
  bool with_closed = false, svg = false;
  double t_end = 0.0;
  std::string param;
  std::vector<double> values;

  auto* validate = app.add_subcommand("validate", "Parse a config and check the initial state");
  validate->add_option("config", config, "JSON run configuration")->required();

  auto* simulate = app.add_subcommand("simulate", "Integrate and write the trajectory CSV");
  simulate->add_option("config", config, "JSON run configuration")->required();

  auto* figure = app.add_subcommand("figure", "Reproduce one of the figures");
  figure->add_option("id", figure_id, "1, 2, 3a, 3b or 4")->required();
  figure->add_option("--out", out_dir, "Output directory");
  figure->add_flag("--with-closed-form", with_closed, "Append closed-form columns");
  figure->add_flag("--svg", svg, "Also write an SVG chart");
  figure->add_option("--overrides", overrides, "JSON merge patch applied to the figure config");

  auto* closed = app.add_subcommand("closed-form", "Evaluate the closed-form solution");
  closed->add_option("config", config, "JSON run configuration")->required();
  closed->add_option("--t-end", t_end, "Final tau")->required();

  auto* compare = app.add_subcommand("compare", "Compare RK4 with the closed form");
  compare->add_option("config", config, "JSON run configuration")->required();

  auto* stationary = app.add_subcommand("stationary", "Solve for the stationary state");
  stationary->add_option("config", config, "JSON run configuration")->required();

  auto* sweep = app.add_subcommand("sweep", "Sweep one scalar parameter");
  sweep->add_option("config", config, "JSON run configuration")->required();
  sweep->add_option("--param", param, "Dotted path, e.g. couplings.h12.re, or the alias r")
      ->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*validate) return cmd_validate(config);
    if (*simulate) return cmd_simulate(config);
    if (*figure) return cmd_figure(figure_id, out_dir, with_closed, svg, overrides);
    if (*closed) return cmd_closed_form(config, t_end);
    if (*compare) return cmd_compare(config);
    if (*stationary) return cmd_stationary(config);
    if (*sweep) return cmd_sweep(config, param, values);
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation failed: %s\n", e.what());
    return 1;
  } catch (const SingularKernelError& e) {
    std::fprintf(stderr, "validation failed: %s\n", e.what());
    return 1;
  } catch (const DegenerateStateError& e) {
    std::fprintf(stderr, "validation failed: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 3;
  }
  return 0;
}
