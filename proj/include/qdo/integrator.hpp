#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qdo/closed_form.hpp"
#include "qdo/lindblad_dynamics.hpp"
#include "qdo/state_space.hpp"

namespace qdo {

enum class Method { Rk4, Rk4Adaptive };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 10.0;
  std::size_t sample_stride = 1;
  Method method = Method::Rk4;
  double adapt_tol = 1e-9;

  /// Throws ConfigError on dt <= 0, t_end <= 0, stride == 0 or adapt_tol <= 0.
  void validate() const;
};

/// Quantities derived from one sample. Lengths are absent when the
/// uncertainty product is not positive.
struct SampleMetrics {
  double det_cs = 0.0;
  double omega_sq_a = 0.0;
  double omega_sq_b = 0.0;
  std::optional<double> d_decoh_sq_a;
  std::optional<double> d_decoh_sq_b;
  double d_corr_sq_a = 0.0;
  double d_corr_sq_b = 0.0;
};

SampleMetrics sample_metrics(const CovarianceState& s);

struct Trajectory {
  std::vector<CovarianceState> samples;  // strictly increasing tau, samples[0] is the initial state
  OscillatorParams osc;
  LindbladCouplings couplings;
  Model model = Model::Simplified;
  std::vector<SampleMetrics> metrics;  // empty until with_metrics()

  Trajectory& with_metrics();
  std::vector<double> taus() const;
};

/// Classical RK4. The final sample sits at t_end; the last step is shortened
/// when t_end is not a multiple of dt. Throws DivergenceError on a non-finite state.
Trajectory integrate(const CovarianceState& initial, const OscillatorParams& osc,
                     const LindbladCouplings& h, const IntegratorConfig& cfg, Model model);

/// Max-norm of (central difference of the samples) - rhs over interior samples.
/// Throws ValidationError for fewer than 3 samples or nonuniform spacing.
double residual_check(const Trajectory& traj, const OscillatorParams& osc,
                      const LindbladCouplings& h, Model model);

/// Per-component max |closed form - trajectory| in kStateNames order. Entries
/// of the cross block are absent when the closed form is undefined (r == 1).
struct ComparisonReport {
  std::array<double, kStateDim> max_abs_diff{};
  bool cross_block_available = true;
  double max_oscillator_diff() const;  // over the A and B blocks
  double max_cross_diff() const;
};

/// Throws ConfigError when the trajectory parameters do not match p.
ComparisonReport compare_closed_form(const Trajectory& traj, const ClosedFormParams& p);

}  // namespace qdo
