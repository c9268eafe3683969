#include "qdo/simon_model.hpp"

#include <cmath>
#include <numbers>

#include "qdo/error.hpp"

namespace qdo {

SimonParams simon_case_a() { return {}; }

SimonParams simon_case_b() {
  SimonParams p;
  p.a12 = 0.5;
  p.b12 = -0.5;
  return p;
}

LengthSq LengthSq::ratio(double numerator, double denominator) {
  if (denominator == 0.0) return unbounded();
  return LengthSq(numerator / denominator);
}

double LengthSq::value() const { return value_.value(); }

std::ostream& operator<<(std::ostream& os, const LengthSq& l) {
  if (l.is_unbounded()) return os << "inf";
  return os << l.value();
}

namespace {

void require_positive_variances(const SimonParams& p) {
  for (double v : {p.a1, p.b1, p.a2, p.b2, p.a12, p.b12})
    if (!std::isfinite(v)) throw ValidationError("Simon parameters must be finite");
  if (!(p.a1 > 0.0 && p.b1 > 0.0 && p.a2 > 0.0 && p.b2 > 0.0))
    throw ValidationError("Simon variances a1, b1, a2, b2 must be positive");
}

}  // namespace

ValidationReport validate_simon(const SimonParams& p) {
  require_positive_variances(p);
  constexpr double slack = kDefaultTolerances.inequality_slack;

  ValidationReport report;
  const double k_a = p.k_a();
  const double k_b = p.k_b();
  report.add("schwarz-K_A", k_a >= -slack, k_a, "a1 a2 - a12^2 >= 0");
  report.add("schwarz-K_B", k_b >= -slack, k_b, "b1 b2 - b12^2 >= 0");
  report.add("heisenberg-A", p.a1 * p.b1 >= 0.25 - slack, p.a1 * p.b1, "a1 b1 >= 1/4");
  report.add("heisenberg-B", p.a2 * p.b2 >= 0.25 - slack, p.a2 * p.b2, "a2 b2 >= 1/4");

  // Scalar bipartite forms are reported only; the matrix forms below decide.
  const double scalar_rhs = 2.0 * k_a * k_b - 0.125;
  report.add("bipartite-scalar-signed", p.a12 * p.b12 <= scalar_rhs, p.a12 * p.b12,
             "a12 b12 <= 2 K_A K_B - 1/8");
  report.add("bipartite-scalar-abs", std::abs(p.a12 * p.b12) <= scalar_rhs,
             std::abs(p.a12 * p.b12), "|a12 b12| <= 2 K_A K_B - 1/8");

  const EntanglementReport ent = entanglement_test(to_covariance_state(p));
  report.add("bipartite-heisenberg", ent.heis_lhs >= ent.heis_rhs - slack,
             ent.heis_lhs - ent.heis_rhs, "matrix form with (1/4 - det C_s)^2");
  report.add("bipartite-separability", ent.sep_lhs >= ent.sep_rhs - slack,
             ent.sep_lhs - ent.sep_rhs, "matrix form with (1/4 - |det C_s|)^2");
  report.add("det-C_s-nonnegative", !ent.entangled, ent.det_cs, "det C_s < 0 signals entanglement");
  return report;
}

CovarianceState to_covariance_state(const SimonParams& p) {
  CovarianceState s;
  s.A11 = p.b1;
  s.C11 = p.a1;
  s.A22 = p.b2;
  s.C22 = p.a2;
  s.A12 = p.b12;
  s.C12 = p.a12;
  return s;
}

SimonParams from_covariance_state(const CovarianceState& s) {
  if (s.B11 != 0.0 || s.B22 != 0.0 || s.B12 != 0.0 || s.B21 != 0.0)
    throw ValidationError("state has nonzero position-momentum covariances");
  return {s.C11, s.A11, s.C22, s.A22, s.C12, s.A12};
}

SimonLengths simon_lengths(const SimonParams& p) {
  require_positive_variances(p);
  const double k_a = p.k_a();
  const double k_b = p.k_b();
  const double omega_a = p.a1 * p.b1;
  const double omega_b = p.a2 * p.b2;

  SimonLengths l;
  l.corr_a = LengthSq(p.a1);
  l.corr_b = LengthSq(p.a2);
  l.decoh_a = LengthSq(1.0 / (4.0 * p.b1));
  l.decoh_b = LengthSq(1.0 / (4.0 * p.b2));
  l.mix_a = LengthSq::ratio(4.0 * p.a1, 4.0 * omega_a - 1.0);
  l.mix_b = LengthSq::ratio(4.0 * p.a2, 4.0 * omega_b - 1.0);
  l.comp_corr_a = LengthSq(p.a1 - p.a12 * p.a12 / p.a2);
  l.comp_corr_b = LengthSq(p.a2 - p.a12 * p.a12 / p.a1);
  l.comp_decoh_a = l.decoh_a;
  l.comp_decoh_b = l.decoh_b;
  l.ent_1 = LengthSq::ratio(1.0, p.b12);
  l.ent_2 = LengthSq::ratio(k_a, p.a12);

  // E^-2 Etilde^-2 = b12 a12 / K_A.
  l.ineq_lhs = LengthSq::ratio(p.a12 * p.b12, k_a);
  if (k_a == 0.0) {
    l.ineq_rhs = LengthSq::unbounded();
    // Both sides diverge; the comparison degenerates to the numerators.
    l.ineq_holds = p.a12 * p.b12 <= 0.25;
  } else {
    l.ineq_rhs = LengthSq(1.0 / (4.0 * k_a) + 2.0 * k_b);
    l.ineq_holds = l.ineq_lhs.value() <= l.ineq_rhs.value();
  }
  return l;
}

double simon_density_eval(const SimonParams& p, double x1, double y1, double x2, double y2) {
  const double k_a = p.k_a();
  if (!(k_a > 0.0)) throw SingularKernelError("composite Simon kernel needs K_A > 0");

  const double x = x1 - x2;
  const double y = y1 - y2;
  const double big_x = 0.5 * (x1 + x2);
  const double big_y = 0.5 * (y1 + y2);
  const double offset_form = x * x * p.b1 + 2.0 * x * y * p.b12 + y * y * p.b2;
  const double center_form =
      (big_x * big_x * p.a2 - 2.0 * big_x * big_y * p.a12 + big_y * big_y * p.a1) / k_a;
  return std::exp(-0.5 * (offset_form + center_form)) /
         (2.0 * std::numbers::pi * std::sqrt(k_a));
}

double simon_reduced_density_eval(const SimonParams& p, Subsystem which, double x1, double x2,
                                  Prefactor mode) {
  require_positive_variances(p);
  const bool a = which == Subsystem::A;
  const double pos = a ? p.a1 : p.a2;
  const double mom = a ? p.b1 : p.b2;

  double prefactor_variance = pos;
  if (!a && mode == Prefactor::MomentumVariance) prefactor_variance = p.b2;

  const double diag = mom + 1.0 / (4.0 * pos);
  const double off = mom - 1.0 / (4.0 * pos);
  const double form = diag * x1 * x1 + diag * x2 * x2 - 2.0 * x1 * x2 * off;
  return std::exp(-0.5 * form) / std::sqrt(2.0 * std::numbers::pi * prefactor_variance);
}

}  // namespace qdo
