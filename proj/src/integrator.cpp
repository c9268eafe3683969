#include "qdo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdo/error.hpp"

namespace qdo {

std::string_view to_string(Method m) { return m == Method::Rk4 ? "rk4" : "rk4_adaptive"; }

Method method_from_string(std::string_view name) {
  if (name == "rk4") return Method::Rk4;
  if (name == "rk4_adaptive") return Method::Rk4Adaptive;
  throw ConfigError("unknown integrator method '" + std::string(name) +
                    "' (expected rk4|rk4_adaptive)");
}

void IntegratorConfig::validate() const {
  if (!std::isfinite(dt) || !(dt > 0.0)) throw ConfigError("integrator.dt must be positive");
  if (!std::isfinite(t_end) || !(t_end > 0.0))
    throw ConfigError("integrator.t_end must be positive");
  if (sample_stride < 1) throw ConfigError("integrator.sample_stride must be >= 1");
  if (!std::isfinite(adapt_tol) || !(adapt_tol > 0.0))
    throw ConfigError("integrator.adapt_tol must be positive");
}

SampleMetrics sample_metrics(const CovarianceState& s) {
  SampleMetrics m;
  m.det_cs = s.C12 * s.A12 - s.B12 * s.B21;
  m.omega_sq_a = s.A11 * s.C11 - s.B11 * s.B11;
  m.omega_sq_b = s.A22 * s.C22 - s.B22 * s.B22;
  m.d_corr_sq_a = s.C11;
  m.d_corr_sq_b = s.C22;
  if (m.omega_sq_a > 0.0) m.d_decoh_sq_a = s.C11 / (2.0 * m.omega_sq_a);
  if (m.omega_sq_b > 0.0) m.d_decoh_sq_b = s.C22 / (2.0 * m.omega_sq_b);
  return m;
}

Trajectory& Trajectory::with_metrics() {
  metrics.clear();
  metrics.reserve(samples.size());
  for (const auto& s : samples) metrics.push_back(sample_metrics(s));
  return *this;
}

std::vector<double> Trajectory::taus() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.tau);
  return out;
}

namespace {

class Stepper {
 public:
  Stepper(const OscillatorParams& osc, const LindbladCouplings& h, Model model)
      : osc_(osc), h_(h), model_(model) {}

  StateVector derivative(const StateVector& y) const {
    return rhs(model_, CovarianceState::from_vector(y), osc_, h_);
  }

  StateVector rk4(const StateVector& y, double step) const {
    const StateVector k1 = derivative(y);
    const StateVector k2 = derivative(axpy(y, 0.5 * step, k1));
    const StateVector k3 = derivative(axpy(y, 0.5 * step, k2));
    const StateVector k4 = derivative(axpy(y, step, k3));
    StateVector out;
    for (std::size_t i = 0; i < kStateDim; ++i)
      out[i] = y[i] + step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
  }

 private:
  static StateVector axpy(const StateVector& y, double a, const StateVector& k) {
    StateVector out;
    for (std::size_t i = 0; i < kStateDim; ++i) out[i] = y[i] + a * k[i];
    return out;
  }

  OscillatorParams osc_;
  LindbladCouplings h_;
  Model model_;
};

void require_finite(const StateVector& y, double tau) {
  for (double v : y)
    if (!std::isfinite(v))
      throw DivergenceError("integration diverged at tau = " + std::to_string(tau), tau);
}

std::size_t step_count(double t_end, double dt) {
  const double q = t_end / dt;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, q)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(q));
}

void integrate_fixed(const Stepper& stepper, Trajectory& traj, const IntegratorConfig& cfg) {
  const std::size_t n = std::max<std::size_t>(1, step_count(cfg.t_end, cfg.dt));
  StateVector y = traj.samples.front().to_vector();
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = static_cast<double>(k) * cfg.dt;
    const bool last = k + 1 == n;
    const double t1 = last ? cfg.t_end : static_cast<double>(k + 1) * cfg.dt;
    y = stepper.rk4(y, t1 - t0);
    require_finite(y, t1);
    if (last || (k + 1) % cfg.sample_stride == 0)
      traj.samples.push_back(CovarianceState::from_vector(y, t1));
  }
}

// Step doubling: one full step against two half steps, local error / 15.
void integrate_adaptive(const Stepper& stepper, Trajectory& traj, const IntegratorConfig& cfg) {
  StateVector y = traj.samples.front().to_vector();
  double t = 0.0;
  double step = cfg.dt;
  std::size_t accepted = 0;
  const double min_step = 1e-12 * cfg.t_end;

  while (t < cfg.t_end) {
    const bool final_step = t + step >= cfg.t_end;
    const double h = final_step ? cfg.t_end - t : step;
    const StateVector full = stepper.rk4(y, h);
    const StateVector half = stepper.rk4(stepper.rk4(y, 0.5 * h), 0.5 * h);

    double err = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < kStateDim; ++i) {
      err = std::max(err, std::abs(half[i] - full[i]) / 15.0);
      scale = std::max(scale, std::abs(half[i]));
    }
    if (!std::isfinite(err)) throw DivergenceError("integration diverged", t);

    const double ratio = err > 0.0 ? cfg.adapt_tol * scale / err : 1e9;
    const double factor = std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 5.0);
    if (err <= cfg.adapt_tol * scale) {
      t = final_step ? cfg.t_end : t + h;
      y = half;
      require_finite(y, t);
      ++accepted;
      if (final_step || accepted % cfg.sample_stride == 0)
        traj.samples.push_back(CovarianceState::from_vector(y, t));
      step = std::max(h, step) * factor;
    } else {
      step = h * factor;
      if (step < min_step) throw DivergenceError("adaptive step size underflow", t);
    }
  }
}

}  // namespace

Trajectory integrate(const CovarianceState& initial, const OscillatorParams& osc,
                     const LindbladCouplings& h, const IntegratorConfig& cfg, Model model) {
  cfg.validate();
  osc.validate();
  Trajectory traj;
  traj.osc = osc;
  traj.couplings = h;
  traj.model = model;

  CovarianceState first = initial;
  first.tau = 0.0;
  require_finite(first.to_vector(), 0.0);
  traj.samples.push_back(first);

  const Stepper stepper(osc, h, model);
  if (cfg.method == Method::Rk4)
    integrate_fixed(stepper, traj, cfg);
  else
    integrate_adaptive(stepper, traj, cfg);
  return traj;
}

double residual_check(const Trajectory& traj, const OscillatorParams& osc,
                      const LindbladCouplings& h, Model model) {
  const auto& s = traj.samples;
  if (s.size() < 3) throw ValidationError("residual check needs at least 3 samples");
  const double spacing = s[1].tau - s[0].tau;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double d = s[i + 1].tau - s[i].tau;
    if (std::abs(d - spacing) > 1e-9 * spacing)
      throw ValidationError("residual check needs uniformly spaced samples");
  }

  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const StateVector prev = s[i - 1].to_vector();
    const StateVector next = s[i + 1].to_vector();
    const StateVector f = rhs(model, s[i], osc, h);
    const double width = s[i + 1].tau - s[i - 1].tau;
    for (std::size_t k = 0; k < kStateDim; ++k)
      worst = std::max(worst, std::abs((next[k] - prev[k]) / width - f[k]));
  }
  return worst;
}

double ComparisonReport::max_oscillator_diff() const {
  return *std::max_element(max_abs_diff.begin(), max_abs_diff.begin() + 6);
}

double ComparisonReport::max_cross_diff() const {
  return *std::max_element(max_abs_diff.begin() + 6, max_abs_diff.end());
}

ComparisonReport compare_closed_form(const Trajectory& traj, const ClosedFormParams& p) {
  if (traj.samples.empty()) throw ConfigError("empty trajectory");
  ClosedFormParams from_traj;
  try {
    from_traj = ClosedFormParams::from(traj.osc, traj.couplings,
                                       from_covariance_state(traj.samples.front()));
  } catch (const Error& e) {
    throw ConfigError(std::string("trajectory is not comparable with the closed form: ") +
                      e.what());
  }
  const bool match = from_traj.osc == p.osc && from_traj.h11 == p.h11 &&
                     from_traj.h33 == p.h33 && from_traj.h13r == p.h13r &&
                     from_traj.h22 == p.h22 && from_traj.h44 == p.h44 &&
                     from_traj.h24r == p.h24r && from_traj.h12r == p.h12r &&
                     from_traj.rates.gamma_a == p.rates.gamma_a &&
                     from_traj.rates.gamma_b == p.rates.gamma_b && from_traj.init == p.init;
  if (!match) throw ConfigError("trajectory parameters do not match the closed-form parameters");

  ComparisonReport rep;
  rep.cross_block_available = p.osc.r() != 1.0;
  for (const auto& s : traj.samples) {
    const OscillatorBlock a = a_block(s.tau, p);
    const OscillatorBlock b = b_block(s.tau, p);
    std::array<double, kStateDim> closed{a.p2, a.xp, a.x2, b.p2, b.xp, b.x2, 0, 0, 0, 0};
    if (rep.cross_block_available) {
      const CrossBlock c = cross_block(s.tau, p);
      closed[6] = c.A12;
      closed[7] = c.B12;
      closed[8] = c.B21;
      closed[9] = c.C12;
    }
    const StateVector y = s.to_vector();
    const std::size_t n = rep.cross_block_available ? kStateDim : 6;
    for (std::size_t k = 0; k < n; ++k)
      rep.max_abs_diff[k] = std::max(rep.max_abs_diff[k], std::abs(closed[k] - y[k]));
  }
  return rep;
}

}  // namespace qdo
