#pragma once

// Gaussian two-mode state described by the ten second moments of the
// ambiguity function
//
//   A(Q, r) = exp(-1/2 (r^T A r + 2 r^T B Q + Q^T C Q))
//
// with <p_i p_j> = A_ij, <R_i R_j> = C_ij and <R_i p_j> = B_ji. Index 1 is
// oscillator A (coordinate x), index 2 is oscillator B (coordinate y).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "qdo/validation.hpp"

namespace qdo {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

inline constexpr std::size_t kStateDim = 10;

/// Flat coefficient vector in the fixed order
/// (A11, B11, C11, A22, B22, C22, A12, B12, B21, C12).
using StateVector = std::array<double, kStateDim>;

inline constexpr std::array<std::string_view, kStateDim> kStateNames = {
    "A11", "B11", "C11", "A22", "B22", "C22", "A12", "B12", "B21", "C12"};

struct CovarianceState {
  double tau = 0.0;
  double A11 = 0.0, A22 = 0.0, A12 = 0.0;
  double B11 = 0.0, B22 = 0.0, B12 = 0.0, B21 = 0.0;
  double C11 = 0.0, C22 = 0.0, C12 = 0.0;

  StateVector to_vector() const {
    return {A11, B11, C11, A22, B22, C22, A12, B12, B21, C12};
  }

  static CovarianceState from_vector(std::span<const double, kStateDim> v, double tau = 0.0) {
    CovarianceState s;
    s.tau = tau;
    s.A11 = v[0];
    s.B11 = v[1];
    s.C11 = v[2];
    s.A22 = v[3];
    s.B22 = v[4];
    s.C22 = v[5];
    s.A12 = v[6];
    s.B12 = v[7];
    s.B21 = v[8];
    s.C12 = v[9];
    return s;
  }

  Mat2 a_matrix() const { return (Mat2() << A11, A12, A12, A22).finished(); }
  Mat2 b_matrix() const { return (Mat2() << B11, B12, B21, B22).finished(); }
  Mat2 c_matrix() const { return (Mat2() << C11, C12, C12, C22).finished(); }

  /// Phase-space covariance of (R1, R2, p1, p2): [[C, B^T], [B, A]].
  Mat4 phase_space_covariance() const;

  /// 2x2 covariance blocks of the (x, p_x), (y, p_y) and cross sectors.
  Mat2 block_a() const { return (Mat2() << C11, B11, B11, A11).finished(); }
  Mat2 block_b() const { return (Mat2() << C22, B22, B22, A22).finished(); }
  Mat2 block_cross() const { return (Mat2() << C12, B12, B21, A12).finished(); }

  bool operator==(const CovarianceState&) const = default;
};

/// Minimum-uncertainty product state: A11 = C11 = A22 = C22 = 1/2.
CovarianceState minimum_uncertainty_state();

enum class Subsystem { A, B };

std::string_view to_string(Subsystem s);

/// Numerical tolerances used across the module. Override per call in tests.
struct Tolerances {
  double finite_difference = 1e-6;
  double symmetry = 1e-12;
  // Slack applied to the soft inequality checks (Omega^2 >= 1/4, K >= 0) so
  // that states sitting exactly on the boundary are not flagged by rounding.
  double inequality_slack = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Finite-entry check is hard (throws ValidationError); every other check is
/// reported in the returned ValidationReport.
ValidationReport validate_state(const CovarianceState& s,
                                const Tolerances& tol = kDefaultTolerances);

struct SubsystemMetrics {
  double omega_sq = 0.0;
  double xi = 0.0;
  bool xi_in_range = true;  // false when Omega^2 < 1/4 forced a clamp
  double d_corr_sq = 0.0;
  double d_decoh_sq = 0.0;
};

/// Correlation / decoherence length scales of one oscillator.
/// Throws DegenerateStateError when Omega^2 <= 0 and ValidationError when the
/// position variance is not positive.
SubsystemMetrics subsystem_metrics(const CovarianceState& s, Subsystem which);

/// Mixed-state parameter from the uncertainty product, clamped to [0, 1).
double mixed_state_parameter(double omega_sq, bool* in_range = nullptr);

/// Quadratic-form data of the position-space density matrix.
struct GaussianKernel {
  Mat2 c_inv;
  Mat2 e_mat;  // C^{-1} B^T
  Mat2 alpha;  // A - B C^{-1} B^T
  double norm = 0.0;  // 1 / (2 pi sqrt(det C))

  /// Throws SingularKernelError if det C <= 0.
  static GaussianKernel from_state(const CovarianceState& s,
                                   const Tolerances& tol = kDefaultTolerances);
};

/// J = [[0, 1], [-1, 0]].
Mat2 symplectic_unit();

struct EntanglementReport {
  double det_as = 0.0;
  double det_bs = 0.0;
  double det_cs = 0.0;
  double k_a = 0.0;
  double k_b = 0.0;
  double trace_term = 0.0;  // tr(A_s J C_s J B_s J C_s^T J)
  double heis_lhs = 0.0;
  double heis_rhs = 0.0;
  double sep_lhs = 0.0;
  double sep_rhs = 0.0;
  bool entangled = false;

  bool heisenberg_holds() const { return heis_lhs >= heis_rhs; }
  bool separability_holds() const { return sep_lhs >= sep_rhs; }
};

EntanglementReport entanglement_test(const CovarianceState& s);

/// rho(R + r/2, R - r/2). Throws SingularKernelError when det C <= 0.
std::complex<double> density_matrix_eval(const CovarianceState& s, const Vec2& R, const Vec2& r);
std::complex<double> density_matrix_eval(const GaussianKernel& k, const Vec2& R, const Vec2& r);

double ambiguity_eval(const CovarianceState& s, const Vec2& Q, const Vec2& r);

/// Wigner function normalised so that its integral over d^2R d^2p / (2 pi)^2
/// is one, built from the phase-space covariance.
/// Throws SingularKernelError when that covariance is not positive definite.
double wigner_eval(const CovarianceState& s, const Vec2& R, const Vec2& p);

/// Block form exp(-1/2 z^T M z) / (sqrt(det C) sqrt(det alpha)) with upper-left
/// block E alpha^{-1} A B^T; agrees with wigner_eval only at R = 0. Kept for
/// comparison only.
double wigner_eval_block_form(const CovarianceState& s, const Vec2& R, const Vec2& p);

/// Marginal density matrix of one oscillator at centre Rc and offset rc.
std::complex<double> reduced_density_eval(const CovarianceState& s, Subsystem which, double Rc,
                                          double rc);

}  // namespace qdo
