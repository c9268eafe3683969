#pragma once

// Coefficient equations of motion for the Gaussian ansatz under the Lindblad
// equation with L = (x, y, p_x, p_y) and H = w_A/2 (p_x^2 + x^2) + w_B/2 (p_y^2 + y^2).
// Time is dimensionless, tau = lambda t.

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "qdo/state_space.hpp"

namespace qdo {

struct OscillatorParams {
  double omega_a = 1.0;
  double omega_b = 3.0;
  double lambda = 1.0;

  double r() const { return omega_b / omega_a; }
  /// Throws ConfigError unless all three energies are positive and finite.
  void validate() const;

  bool operator==(const OscillatorParams&) const = default;
};

struct ComplexCoupling {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> value() const { return {re, im}; }
  bool operator==(const ComplexCoupling&) const = default;
};

/// Hermitian 4x4 coefficient matrix h_mn, rows/columns ordered (x, y, p_x, p_y).
struct LindbladCouplings {
  double h11 = 0.0, h22 = 0.0, h33 = 0.0, h44 = 0.0;
  ComplexCoupling h12, h13, h14, h23, h24, h34;

  Eigen::Matrix4cd matrix() const;

  /// True when only h_ii, Re h12, h13 and h24 are nonzero.
  bool in_simplified_model() const;

  bool operator==(const LindbladCouplings&) const = default;
};

struct DampingRates {
  double gamma_a = 0.0;  // 2 Im h13 / w_A
  double gamma_b = 0.0;  // 2 Im h24 / w_B
  double gamma = 0.0;    // (gamma_a + r gamma_b) / 2

  static DampingRates from(const OscillatorParams& osc, const LindbladCouplings& h);
};

/// Couplings with the given damping rates: Im h13 = gamma_a w_A / 2, Im h24 = gamma_b w_B / 2.
void set_damping(LindbladCouplings& h, const OscillatorParams& osc, double gamma_a,
                 double gamma_b);

struct PsdReport {
  std::array<double, 4> eigenvalues{};  // ascending
  double min_eigenvalue = 0.0;
  bool positive_semidefinite = true;
};

/// Eigenvalues of the coupling matrix. A negative eigenvalue is a warning only.
PsdReport psd_check(const LindbladCouplings& h, double tol = 1e-12);

enum class Model { General, Simplified };

std::string_view to_string(Model m);
Model model_from_string(std::string_view name);

/// Full coupled right-hand side d/dtau of all ten coefficients.
StateVector general_rhs(const CovarianceState& s, const OscillatorParams& osc,
                        const LindbladCouplings& h);

/// Decoupled right-hand side. Throws ModelViolationError when a coupling outside
/// the simplified set is nonzero.
StateVector simplified_rhs(const CovarianceState& s, const OscillatorParams& osc,
                           const LindbladCouplings& h);

StateVector rhs(Model model, const CovarianceState& s, const OscillatorParams& osc,
                const LindbladCouplings& h);

/// Solves rhs = 0. The simplified model is solved as three independent blocks
/// (3, 3 and 4 unknowns). Throws NoStationaryStateError for singular systems.
CovarianceState stationary_state(const OscillatorParams& osc, const LindbladCouplings& h,
                                 Model model);

/// Parameters used for every figure: lambda = w_A = 1, r = 3,
/// Gamma_A = Gamma_B = 1/4, h11 = h33 = Re h13 = 1, h22 = 2, h44 = 4,
/// and Re h12 = Re h24 = 1 (free choices).
OscillatorParams figure_oscillator();
LindbladCouplings figure_couplings();

}  // namespace qdo
