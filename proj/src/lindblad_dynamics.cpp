#include "qdo/lindblad_dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qdo/error.hpp"
#include "qdo/linalg.hpp"

namespace qdo {

void OscillatorParams::validate() const {
  for (double v : {omega_a, omega_b, lambda})
    if (!std::isfinite(v) || !(v > 0.0))
      throw ConfigError("omega_a, omega_b and lambda must be positive and finite");
}

Eigen::Matrix4cd LindbladCouplings::matrix() const {
  Eigen::Matrix4cd m;
  m(0, 0) = h11;
  m(1, 1) = h22;
  m(2, 2) = h33;
  m(3, 3) = h44;
  const auto set = [&m](int i, int j, const ComplexCoupling& c) {
    m(i, j) = c.value();
    m(j, i) = std::conj(c.value());
  };
  set(0, 1, h12);
  set(0, 2, h13);
  set(0, 3, h14);
  set(1, 2, h23);
  set(1, 3, h24);
  set(2, 3, h34);
  return m;
}

bool LindbladCouplings::in_simplified_model() const {
  return h12.im == 0.0 && h14 == ComplexCoupling{} && h23 == ComplexCoupling{} &&
         h34 == ComplexCoupling{};
}

DampingRates DampingRates::from(const OscillatorParams& osc, const LindbladCouplings& h) {
  DampingRates d;
  d.gamma_a = 2.0 * h.h13.im / osc.omega_a;
  d.gamma_b = 2.0 * h.h24.im / osc.omega_b;
  d.gamma = 0.5 * (d.gamma_a + osc.r() * d.gamma_b);
  return d;
}

void set_damping(LindbladCouplings& h, const OscillatorParams& osc, double gamma_a,
                 double gamma_b) {
  h.h13.im = 0.5 * gamma_a * osc.omega_a;
  h.h24.im = 0.5 * gamma_b * osc.omega_b;
}

PsdReport psd_check(const LindbladCouplings& h, double tol) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h.matrix(),
                                                               Eigen::EigenvaluesOnly);
  PsdReport rep;
  for (int i = 0; i < 4; ++i) rep.eigenvalues[i] = solver.eigenvalues()(i);
  rep.min_eigenvalue = rep.eigenvalues[0];
  const double scale = std::max(1.0, std::abs(rep.eigenvalues[3]));
  rep.positive_semidefinite = rep.min_eigenvalue >= -tol * scale;
  return rep;
}

std::string_view to_string(Model m) { return m == Model::General ? "general" : "simplified"; }

Model model_from_string(std::string_view name) {
  if (name == "general") return Model::General;
  if (name == "simplified") return Model::Simplified;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected general|simplified)");
}

StateVector general_rhs(const CovarianceState& s, const OscillatorParams& osc,
                        const LindbladCouplings& h) {
  const double wa = osc.omega_a;
  const double wb = osc.omega_b;
  const double h12i = h.h12.im, h13i = h.h13.im, h14i = h.h14.im;
  const double h23i = h.h23.im, h24i = h.h24.im, h34i = h.h34.im;
  const double damp = h13i + h24i;

  // Oscillator A. The w_A A11 term of dB11 carries the sign of the decoupled
  // equations (d<xp>/dt = w(<p^2> - <x^2>)).
  const double a11 = -2.0 * wa * s.B11 - 2.0 * h13i * s.A11 - 2.0 * h12i * s.B12 -
                     2.0 * h14i * s.A12 + h.h11;
  const double b11 = wa * s.A11 - wa * s.C11 - 2.0 * h13i * s.B11 + h34i * s.A12 -
                     2.0 * h23i * s.B12 - h14i * s.B21 - h12i * s.C12 - h.h13.re;
  const double c11 =
      2.0 * wa * s.B11 - 2.0 * h13i * s.C11 + 2.0 * h34i * s.B21 - 2.0 * h23i * s.C12 + h.h33;

  // Oscillator B. dA22 uses -2 w_B B22, matching the decoupled equations.
  const double a22 = -2.0 * wb * s.B22 - 2.0 * h24i * s.A22 + 2.0 * h23i * s.A12 +
                     2.0 * h12i * s.B21 + h.h22;
  const double b22 = wb * s.A22 - wb * s.C22 - 2.0 * h24i * s.B22 + h34i * s.A12 +
                     h23i * s.B12 - h14i * s.B21 + h12i * s.C12 - h.h24.re;
  const double c22 =
      2.0 * wb * s.B22 - 2.0 * h24i * s.C22 - 2.0 * h34i * s.B12 - 2.0 * h14i * s.C12 + h.h44;

  // Cross correlations.
  const double a12 = -wa * s.B21 - wb * s.B12 - damp * s.A12 + h23i * s.A11 - h14i * s.A22 +
                     h12i * s.B11 - h12i * s.B22 + h.h12.re;
  const double b12 = wb * s.A12 - wa * s.C12 - damp * s.B12 - h34i * s.A11 - h14i * s.B11 -
                     h14i * s.B22 - h12i * s.C22 - h.h14.re;
  const double b21 = wa * s.A12 - wb * s.C12 - damp * s.B21 - h34i * s.A22 + h23i * s.B11 -
                     h23i * s.B22 - h12i * s.C11 + h.h23.re;
  const double c12 = wa * s.B12 + wb * s.B21 - damp * s.C12 - h34i * s.B11 + h34i * s.B11 -
                     h14i * s.C11 - h23i * s.C22 + h.h34.re;

  const double l = osc.lambda;
  return {a11 / l, b11 / l, c11 / l, a22 / l, b22 / l, c22 / l,
          a12 / l, b12 / l, b21 / l, c12 / l};
}

StateVector simplified_rhs(const CovarianceState& s, const OscillatorParams& osc,
                           const LindbladCouplings& h) {
  if (!h.in_simplified_model())
    throw ModelViolationError(
        "simplified model admits only h_ii, Re h12, h13 and h24; other couplings are nonzero");

  const double wa = osc.omega_a;
  const double wb = osc.omega_b;
  const double h13i = h.h13.im;
  const double h24i = h.h24.im;
  const double damp = h13i + h24i;

  const double a11 = -2.0 * wa * s.B11 - 2.0 * h13i * s.A11 + h.h11;
  const double b11 = wa * s.A11 - wa * s.C11 - 2.0 * h13i * s.B11 - h.h13.re;
  const double c11 = 2.0 * wa * s.B11 - 2.0 * h13i * s.C11 + h.h33;

  const double a22 = -2.0 * wb * s.B22 - 2.0 * h24i * s.A22 + h.h22;
  const double b22 = wb * s.A22 - wb * s.C22 - 2.0 * h24i * s.B22 - h.h24.re;
  const double c22 = 2.0 * wb * s.B22 - 2.0 * h24i * s.C22 + h.h44;

  const double a12 = -wa * s.B21 - wb * s.B12 - damp * s.A12 + h.h12.re;
  const double b12 = wb * s.A12 - wa * s.C12 - damp * s.B12;
  const double b21 = wa * s.A12 - wb * s.C12 - damp * s.B21;
  const double c12 = wa * s.B12 + wb * s.B21 - damp * s.C12;

  const double l = osc.lambda;
  return {a11 / l, b11 / l, c11 / l, a22 / l, b22 / l, c22 / l,
          a12 / l, b12 / l, b21 / l, c12 / l};
}

StateVector rhs(Model model, const CovarianceState& s, const OscillatorParams& osc,
                const LindbladCouplings& h) {
  return model == Model::General ? general_rhs(s, osc, h) : simplified_rhs(s, osc, h);
}

namespace {

// Every state-dependent term carries an imaginary coupling; every driving term
// is a diagonal entry or a real part. Dropping the latter isolates the linear part.
LindbladCouplings homogeneous_part(const LindbladCouplings& h) {
  LindbladCouplings lin;
  lin.h12.im = h.h12.im;
  lin.h13.im = h.h13.im;
  lin.h14.im = h.h14.im;
  lin.h23.im = h.h23.im;
  lin.h24.im = h.h24.im;
  lin.h34.im = h.h34.im;
  return lin;
}

template <std::size_t N>
std::array<double, N> solve_block(Model model, const OscillatorParams& osc,
                                  const LindbladCouplings& h,
                                  const std::array<std::size_t, N>& idx) {
  const LindbladCouplings lin = homogeneous_part(h);
  const StateVector drive = rhs(model, CovarianceState{}, osc, h);

  SquareMatrix<N> a{};
  std::array<double, N> b{};
  for (std::size_t j = 0; j < N; ++j) {
    StateVector unit{};
    unit[idx[j]] = 1.0;
    const StateVector col = rhs(model, CovarianceState::from_vector(unit), osc, lin);
    for (std::size_t i = 0; i < N; ++i) a[i][j] = col[idx[i]];
  }
  for (std::size_t i = 0; i < N; ++i) b[i] = -drive[idx[i]];

  try {
    return solve_partial_pivot<N>(a, b);
  } catch (const SingularMatrixError& e) {
    throw NoStationaryStateError(std::string("stationary system is singular (") + e.what() +
                                 "); damping is required for a stationary state");
  }
}

}  // namespace

CovarianceState stationary_state(const OscillatorParams& osc, const LindbladCouplings& h,
                                 Model model) {
  StateVector out{};
  if (model == Model::General) {
    std::array<std::size_t, kStateDim> idx{};
    for (std::size_t i = 0; i < kStateDim; ++i) idx[i] = i;
    out = solve_block<kStateDim>(model, osc, h, idx);
  } else {
    const auto a = solve_block<3>(model, osc, h, {0, 1, 2});
    const auto b = solve_block<3>(model, osc, h, {3, 4, 5});
    const auto c = solve_block<4>(model, osc, h, {6, 7, 8, 9});
    std::copy(a.begin(), a.end(), out.begin());
    std::copy(b.begin(), b.end(), out.begin() + 3);
    std::copy(c.begin(), c.end(), out.begin() + 6);
  }
  return CovarianceState::from_vector(out, std::numeric_limits<double>::infinity());
}

OscillatorParams figure_oscillator() { return {1.0, 3.0, 1.0}; }

LindbladCouplings figure_couplings() {
  const OscillatorParams osc = figure_oscillator();
  LindbladCouplings h;
  h.h11 = 1.0;
  h.h33 = 1.0;
  h.h22 = 2.0;
  h.h44 = 4.0;
  h.h13.re = 1.0;
  h.h24.re = 1.0;
  h.h12.re = 1.0;
  set_damping(h, osc, 0.25, 0.25);
  return h;
}

}  // namespace qdo
