#include "qdo/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <limits>
#include <optional>

#include "qdo/closed_form.hpp"
#include "qdo/error.hpp"
#include "qdo/svg.hpp"

namespace qdo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int band_sign(double v, double h) { return v < -h ? -1 : (v > h ? 1 : 0); }

double locate_crossing(const std::vector<double>& t, const std::vector<double>& d, std::size_t from,
                       std::size_t to) {
  for (std::size_t k = from; k < to; ++k) {
    const double a = d[k], b = d[k + 1];
    if ((a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0)) {
      if (a == b) return t[k];
      return t[k] + a / (a - b) * (t[k + 1] - t[k]);
    }
  }
  return t[to];
}

double det_cs(const CovarianceState& s) { return s.C12 * s.A12 - s.B12 * s.B21; }

double decoherence_sq(double p2, double xp, double x2) {
  const double omega_sq = p2 * x2 - xp * xp;
  return omega_sq > 0.0 ? x2 / (2.0 * omega_sq) : kNan;
}

Trajectory run_trajectory(const RunConfig& cfg, const SimonParams& init) {
  return integrate(to_covariance_state(init), cfg.oscillator, cfg.couplings, cfg.integrator,
                   cfg.model)
      .with_metrics();
}

std::optional<CrossBlock> maybe_cross(double tau, const ClosedFormParams& p) {
  if (p.osc.r() == 1.0) return std::nullopt;
  return cross_block(tau, p);
}

double flag(bool b) { return b ? 1.0 : 0.0; }

}  // namespace

EntanglementWindows entanglement_windows(const std::vector<double>& taus,
                                         const std::vector<double>& det, double hysteresis) {
  EntanglementWindows out;
  if (taus.size() != det.size()) throw ValidationError("taus and det_cs differ in length");
  if (taus.empty()) return out;

  int state = 0;
  std::size_t last = 0;
  bool open = false;
  double start = 0.0;
  for (std::size_t i = 0; i < det.size(); ++i) {
    const int s = band_sign(det[i], hysteresis);
    if (s == 0) continue;
    if (state == 0) {
      if (s < 0) {
        open = true;
        start = i == 0 ? taus[0] : taus[i - 1];
      }
    } else if (s != state) {
      const double t = locate_crossing(taus, det, last, i);
      out.crossing_taus.push_back(t);
      if (s < 0) {
        open = true;
        start = t;
      } else {
        out.intervals.emplace_back(start, t);
        open = false;
      }
    }
    state = s;
    last = i;
  }
  if (open) out.intervals.emplace_back(start, taus.back());
  return out;
}

EntanglementWindows entanglement_windows(const Trajectory& traj, double hysteresis) {
  std::vector<double> det;
  det.reserve(traj.samples.size());
  for (const auto& s : traj.samples) det.push_back(det_cs(s));
  return entanglement_windows(traj.taus(), det, hysteresis);
}

std::string_view to_string(FigureId f) {
  switch (f) {
    case FigureId::Fig1: return "1";
    case FigureId::Fig2: return "2";
    case FigureId::Fig3a: return "3a";
    case FigureId::Fig3b: return "3b";
    case FigureId::Fig4: return "4";
  }
  return "?";
}

FigureId figure_from_string(std::string_view s) {
  for (auto f : {FigureId::Fig1, FigureId::Fig2, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4})
    if (s == to_string(f)) return f;
  throw ConfigError("invalid figure id '" + std::string(s) + "' (expected 1, 2, 3a, 3b or 4)");
}

RunConfig figure_config(FigureId f) {
  RunConfig cfg;
  cfg.oscillator = figure_oscillator();
  cfg.couplings = figure_couplings();
  cfg.initial = f == FigureId::Fig3b ? simon_case_b() : simon_case_a();
  cfg.model = Model::Simplified;
  cfg.integrator.dt = 1e-3;
  cfg.integrator.t_end = 15.0;
  cfg.integrator.sample_stride = 10;
  return cfg;
}

CsvTable figure_table(FigureId f, const RunConfig& cfg, bool closed_form) {
  CsvTable t;
  if (f == FigureId::Fig4) {
    const Trajectory a = run_trajectory(cfg, simon_case_a());
    const Trajectory b = run_trajectory(cfg, simon_case_b());
    t.header = {"tau", "det_cs_A", "det_cs_B"};
    std::optional<ClosedFormParams> pa, pb;
    if (closed_form) {
      pa = ClosedFormParams::from(cfg.oscillator, cfg.couplings, simon_case_a());
      pb = ClosedFormParams::from(cfg.oscillator, cfg.couplings, simon_case_b());
      t.header.insert(t.header.end(), {"det_cs_A_closed", "det_cs_B_closed"});
    }
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      const double tau = a.samples[i].tau;
      std::vector<double> row{tau, a.metrics[i].det_cs, b.metrics[i].det_cs};
      if (closed_form) {
        for (const auto* p : {&*pa, &*pb}) {
          const auto c = maybe_cross(tau, *p);
          row.push_back(c ? c->C12 * c->A12 - c->B12 * c->B21 : kNan);
        }
      }
      t.add_row(std::move(row));
    }
    return t;
  }

  const Trajectory traj = run_trajectory(cfg, cfg.initial);
  std::optional<ClosedFormParams> p;
  if (closed_form) p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);

  switch (f) {
    case FigureId::Fig1: t.header = {"tau", "p2_A", "p2_B"}; break;
    case FigureId::Fig2: t.header = {"tau", "d_decoh_A", "d_decoh_B"}; break;
    default: t.header = {"tau", "A12", "B12", "B21", "C12"}; break;
  }
  if (closed_form) {
    const std::size_t n = t.header.size();
    for (std::size_t i = 1; i < n; ++i) t.header.push_back(t.header[i] + "_closed");
  }

  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const CovarianceState& s = traj.samples[i];
    const SampleMetrics& m = traj.metrics[i];
    std::vector<double> row{s.tau};
    switch (f) {
      case FigureId::Fig1: row.insert(row.end(), {s.A11, s.A22}); break;
      case FigureId::Fig2:
        row.insert(row.end(), {m.d_decoh_sq_a.value_or(kNan), m.d_decoh_sq_b.value_or(kNan)});
        break;
      default: row.insert(row.end(), {s.A12, s.B12, s.B21, s.C12}); break;
    }
    if (closed_form) {
      const OscillatorBlock a = a_block(s.tau, *p);
      const OscillatorBlock b = b_block(s.tau, *p);
      switch (f) {
        case FigureId::Fig1: row.insert(row.end(), {a.p2, b.p2}); break;
        case FigureId::Fig2:
          row.insert(row.end(),
                     {decoherence_sq(a.p2, a.xp, a.x2), decoherence_sq(b.p2, b.xp, b.x2)});
          break;
        default: {
          const auto c = maybe_cross(s.tau, *p);
          if (c)
            row.insert(row.end(), {c->A12, c->B12, c->B21, c->C12});
          else
            row.insert(row.end(), {kNan, kNan, kNan, kNan});
        }
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

FigureOutput run_figure(FigureId f, const FigureOptions& opts) {
  nlohmann::json j = to_json(figure_config(f));
  j.merge_patch(opts.overrides);
  const RunConfig cfg = parse_run_config(j);

  FigureOutput out;
  out.table = figure_table(f, cfg, opts.with_closed_form);
  const std::string stem = "figure_" + std::string(to_string(f));
  const std::filesystem::path dir(opts.out_dir);
  out.csv_path = (dir / (stem + ".csv")).string();
  write_text_file(out.csv_path, to_csv(out.table, cfg.outputs.precision));

  if (opts.svg) {
    std::vector<std::string> cols(out.table.header.begin() + 1, out.table.header.end());
    ChartOptions chart;
    chart.title = "figure " + std::string(to_string(f));
    out.svg_path = (dir / (stem + ".svg")).string();
    write_text_file(out.svg_path, render_line_chart(out.table, "tau", cols, chart));
  }
  return out;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  t.header.push_back("tau");
  for (auto name : kStateNames) t.header.emplace_back(name);
  t.header.insert(t.header.end(), {"det_cs", "omega_sq_A", "omega_sq_B"});
  for (const auto& s : traj.samples) {
    const SampleMetrics m = sample_metrics(s);
    std::vector<double> row{s.tau};
    for (double v : s.to_vector()) row.push_back(v);
    row.insert(row.end(), {m.det_cs, m.omega_sq_a, m.omega_sq_b});
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable closed_form_table(const RunConfig& cfg, double t_end) {
  if (!std::isfinite(t_end) || !(t_end > 0.0)) throw ConfigError("--t-end must be positive");
  const ClosedFormParams p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);
  CsvTable t;
  t.header.push_back("tau");
  for (auto name : kStateNames) t.header.emplace_back(name);

  const double step = cfg.integrator.dt * static_cast<double>(cfg.integrator.sample_stride);
  const auto n = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
  std::vector<double> taus;
  for (std::size_t k = 0; k <= n; ++k) taus.push_back(static_cast<double>(k) * step);
  if (t_end - taus.back() > 1e-9 * t_end) taus.push_back(t_end);

  for (double tau : taus) {
    const OscillatorBlock a = a_block(tau, p);
    const OscillatorBlock b = b_block(tau, p);
    const auto c = maybe_cross(tau, p);
    t.add_row({tau, a.p2, a.xp, a.x2, b.p2, b.xp, b.x2, c ? c->A12 : kNan, c ? c->B12 : kNan,
               c ? c->B21 : kNan, c ? c->C12 : kNan});
  }
  return t;
}

namespace {

std::vector<double> sweep_row(const RunConfig& base, const std::string& path, double value) {
  const RunConfig cfg = with_parameter(base, path, value);

  const Trajectory traj = run_trajectory(cfg, cfg.initial);
  const double final_det = traj.metrics.back().det_cs;
  const std::size_t windows = entanglement_windows(traj).intervals.size();

  double stationary = kNan;
  try {
    stationary = det_cs(stationary_state(cfg.oscillator, cfg.couplings, cfg.model)) + 0.0;
  } catch (const NoStationaryStateError&) {
  }

  double asymptotic = kNan;
  if (cfg.couplings.in_simplified_model()) {
    const ClosedFormParams p = ClosedFormParams::from(cfg.oscillator, cfg.couplings, cfg.initial);
    if (p.rates.gamma > 0.0) asymptotic = det_cs_asymptotic(p).value + 0.0;
  }

  const auto entangled = [](double d) { return std::isnan(d) ? kNan : flag(d < 0.0); };
  const double inconsistent = std::isnan(stationary) || std::isnan(asymptotic)
                                  ? kNan
                                  : flag((stationary < 0.0) != (asymptotic < 0.0));
  return {value,
          final_det,
          stationary,
          asymptotic,
          entangled(final_det),
          entangled(stationary),
          entangled(asymptotic),
          inconsistent,
          static_cast<double>(windows)};
}

}  // namespace

CsvTable run_sweep(const RunConfig& cfg, const SweepSpec& sweep) {
  if (sweep.values.empty()) throw ConfigError("sweep needs at least one value");
  for (double v : sweep.values)
    if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
  // Fail on a bad path before spawning work.
  with_parameter(cfg, sweep.param_path, sweep.values.front());

  std::vector<std::future<std::vector<double>>> rows;
  rows.reserve(sweep.values.size());
  for (double v : sweep.values)
    rows.push_back(std::async(std::launch::async, sweep_row, std::cref(cfg),
                              std::cref(sweep.param_path), v));

  CsvTable t;
  t.header = {sweep.param_path,       "det_cs_final",        "det_cs_stationary",
              "det_cs_asymptotic",    "entangled_final",     "entangled_stationary",
              "entangled_asymptotic", "inconsistent",        "windows"};
  for (auto& r : rows) t.add_row(r.get());
  return t;
}

}  // namespace qdo
