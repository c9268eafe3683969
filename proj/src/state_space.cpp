#include "qdo/state_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdo/error.hpp"

namespace qdo {
namespace {

bool all_finite(const CovarianceState& s) {
  for (double v : s.to_vector())
    if (!std::isfinite(v)) return false;
  return true;
}

double det2(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

Mat4 CovarianceState::phase_space_covariance() const {
  Mat4 sigma;
  sigma.topLeftCorner<2, 2>() = c_matrix();
  sigma.topRightCorner<2, 2>() = b_matrix().transpose();
  sigma.bottomLeftCorner<2, 2>() = b_matrix();
  sigma.bottomRightCorner<2, 2>() = a_matrix();
  return sigma;
}

CovarianceState minimum_uncertainty_state() {
  CovarianceState s;
  s.A11 = s.C11 = s.A22 = s.C22 = 0.5;
  return s;
}

std::string_view to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

ValidationReport validate_state(const CovarianceState& s, const Tolerances& tol) {
  if (!all_finite(s)) throw ValidationError("covariance state has non-finite entries");

  ValidationReport report;
  const double min_diag = std::min({s.A11, s.C11, s.A22, s.C22});
  report.add("positive-diagonal", min_diag > 0.0, min_diag, "A11, C11, A22, C22 > 0");

  const double omega_a = s.A11 * s.C11 - s.B11 * s.B11;
  const double omega_b = s.A22 * s.C22 - s.B22 * s.B22;
  report.add("heisenberg-A", omega_a >= 0.25 - tol.inequality_slack, omega_a,
             "A11 C11 - B11^2 >= 1/4");
  report.add("heisenberg-B", omega_b >= 0.25 - tol.inequality_slack, omega_b,
             "A22 C22 - B22^2 >= 1/4");

  const double k_a = s.C11 * s.C22 - s.C12 * s.C12;
  const double k_b = s.A11 * s.A22 - s.A12 * s.A12;
  report.add("schwarz-K_A", k_a >= -tol.inequality_slack, k_a, "C11 C22 - C12^2 >= 0");
  report.add("schwarz-K_B", k_b >= -tol.inequality_slack, k_b, "A11 A22 - A12^2 >= 0");
  return report;
}

double mixed_state_parameter(double omega_sq, bool* in_range) {
  const double xi = std::isinf(omega_sq) ? (omega_sq > 0.0 ? 1.0 : -1.0)
                                          : (4.0 * omega_sq - 1.0) / (4.0 * omega_sq + 1.0);
  const bool ok = xi >= 0.0 && xi < 1.0;
  if (in_range) *in_range = ok;
  if (xi < 0.0) return 0.0;
  if (xi >= 1.0) return std::nextafter(1.0, 0.0);
  return xi;
}

SubsystemMetrics subsystem_metrics(const CovarianceState& s, Subsystem which) {
  const bool a = which == Subsystem::A;
  const double p2 = a ? s.A11 : s.A22;
  const double mixed = a ? s.B11 : s.B22;
  const double x2 = a ? s.C11 : s.C22;
  if (!(x2 > 0.0) || !(p2 > 0.0))
    throw ValidationError("subsystem " + std::string(to_string(which)) +
                          " has nonpositive diagonal variance");

  SubsystemMetrics m;
  m.omega_sq = p2 * x2 - mixed * mixed;
  if (!(m.omega_sq > 0.0))
    throw DegenerateStateError("uncertainty product of subsystem " +
                               std::string(to_string(which)) + " is not positive");
  m.xi = mixed_state_parameter(m.omega_sq, &m.xi_in_range);
  m.d_corr_sq = x2;
  m.d_decoh_sq = x2 / (2.0 * m.omega_sq);
  return m;
}

GaussianKernel GaussianKernel::from_state(const CovarianceState& s, const Tolerances& tol) {
  const double det_c = s.C11 * s.C22 - s.C12 * s.C12;
  if (!(det_c > 0.0)) throw SingularKernelError("position covariance C is not positive definite");

  GaussianKernel k;
  k.c_inv << s.C22 / det_c, -s.C12 / det_c, -s.C12 / det_c, s.C11 / det_c;
  const Mat2 b = s.b_matrix();
  k.e_mat = k.c_inv * b.transpose();
  k.alpha = s.a_matrix() - b * k.e_mat;
  k.norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det_c));

  const double asym = std::abs(k.alpha(0, 1) - k.alpha(1, 0));
  if (asym > tol.symmetry * std::max(std::abs(k.alpha(0, 1)), 1.0))
    throw SingularKernelError("alpha = A - B C^-1 B^T lost symmetry (C ill-conditioned)");
  return k;
}

Mat2 symplectic_unit() { return (Mat2() << 0.0, 1.0, -1.0, 0.0).finished(); }

EntanglementReport entanglement_test(const CovarianceState& s) {
  EntanglementReport rep;
  rep.det_as = s.A11 * s.C11 - s.B11 * s.B11;
  rep.det_bs = s.A22 * s.C22 - s.B22 * s.B22;
  rep.det_cs = s.C12 * s.A12 - s.B12 * s.B21;
  rep.k_a = s.C11 * s.C22 - s.C12 * s.C12;
  rep.k_b = s.A11 * s.A22 - s.A12 * s.A12;

  const Mat2 j = symplectic_unit();
  const Mat2 cs = s.block_cross();
  rep.trace_term = (s.block_a() * j * cs * j * s.block_b() * j * cs.transpose() * j).trace();

  const double product = rep.det_as * rep.det_bs;
  const double rhs = 0.25 * (rep.det_as + rep.det_bs);
  rep.heis_lhs = product + std::pow(0.25 - rep.det_cs, 2) - rep.trace_term;
  rep.heis_rhs = rhs;
  rep.sep_lhs = product + std::pow(0.25 - std::abs(rep.det_cs), 2) - rep.trace_term;
  rep.sep_rhs = rhs;
  rep.entangled = rep.det_cs < 0.0;
  return rep;
}

std::complex<double> density_matrix_eval(const GaussianKernel& k, const Vec2& R, const Vec2& r) {
  const double quad_center = R.dot(k.c_inv * R);
  const double quad_offset = r.dot(k.alpha * r);
  const double phase = R.dot(k.e_mat * r);
  const double magnitude = k.norm * std::exp(-0.5 * (quad_center + quad_offset));
  return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

std::complex<double> density_matrix_eval(const CovarianceState& s, const Vec2& R, const Vec2& r) {
  return density_matrix_eval(GaussianKernel::from_state(s), R, r);
}

double ambiguity_eval(const CovarianceState& s, const Vec2& Q, const Vec2& r) {
  const double form = r.dot(s.a_matrix() * r) + 2.0 * r.dot(s.b_matrix() * Q) +
                      Q.dot(s.c_matrix() * Q);
  return std::exp(-0.5 * form);
}

double wigner_eval(const CovarianceState& s, const Vec2& R, const Vec2& p) {
  const Eigen::LLT<Mat4> llt(s.phase_space_covariance());
  if (llt.info() != Eigen::Success)
    throw SingularKernelError("phase-space covariance is not positive definite");

  Eigen::Vector4d z;
  z << R, p;
  const Eigen::Vector4d w = llt.matrixL().solve(z);
  const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
  if (!(sqrt_det > 0.0))
    throw SingularKernelError("phase-space covariance is not positive definite");
  return std::exp(-0.5 * w.squaredNorm()) / sqrt_det;
}

double wigner_eval_block_form(const CovarianceState& s, const Vec2& R, const Vec2& p) {
  const GaussianKernel k = GaussianKernel::from_state(s);
  const double det_alpha = det2(k.alpha);
  if (!(det_alpha > 0.0)) throw SingularKernelError("alpha is not positive definite");
  const Mat2 alpha_inv = k.alpha.inverse();

  Mat4 m;
  m.topLeftCorner<2, 2>() = k.e_mat * alpha_inv * s.a_matrix() * s.b_matrix().transpose();
  m.topRightCorner<2, 2>() = -k.e_mat * alpha_inv;
  m.bottomLeftCorner<2, 2>() = -alpha_inv * k.e_mat.transpose();
  m.bottomRightCorner<2, 2>() = alpha_inv;

  Eigen::Vector4d z;
  z << R, p;
  const double det_c = s.C11 * s.C22 - s.C12 * s.C12;
  return std::exp(-0.5 * z.dot(m * z)) / (std::sqrt(det_c) * std::sqrt(det_alpha));
}

std::complex<double> reduced_density_eval(const CovarianceState& s, Subsystem which, double Rc,
                                          double rc) {
  const bool a = which == Subsystem::A;
  const double p2 = a ? s.A11 : s.A22;
  const double mixed = a ? s.B11 : s.B22;
  const double x2 = a ? s.C11 : s.C22;
  if (!(x2 > 0.0))
    throw ValidationError("subsystem " + std::string(to_string(which)) +
                          " has nonpositive position variance");

  const double omega_sq = p2 * x2 - mixed * mixed;
  const double magnitude = std::exp(-(Rc * Rc + omega_sq * rc * rc) / (2.0 * x2)) /
                           std::sqrt(2.0 * std::numbers::pi * x2);
  const double phase = mixed * Rc * rc / x2;
  return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

}  // namespace qdo
