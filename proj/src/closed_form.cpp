#include "qdo/closed_form.hpp"

#include <cmath>

#include "qdo/error.hpp"

namespace qdo {

ClosedFormParams ClosedFormParams::from(const OscillatorParams& osc, const LindbladCouplings& h,
                                        const SimonParams& init) {
  if (!h.in_simplified_model())
    throw ModelViolationError("closed-form solutions exist only for the simplified model");
  ClosedFormParams p;
  p.osc = osc;
  p.rates = DampingRates::from(osc, h);
  p.h11 = h.h11;
  p.h33 = h.h33;
  p.h13r = h.h13.re;
  p.h22 = h.h22;
  p.h44 = h.h44;
  p.h24r = h.h24.re;
  p.h12r = h.h12.re;
  p.init = init;
  return p;
}

namespace {

// (1 - e^{-g s}) / g, continuous at g = 0 where it tends to s.
double relaxation_integral(double g, double s) {
  if (g == 0.0) return s;
  return -std::expm1(-g * s) / g;
}

// Single damped oscillator in its own scaled time s = tau w / lambda. The
// 1/Gamma prefactors are distributed over their brackets so that Gamma = 0 reduces to the secular (linear in s) form.
OscillatorBlock oscillator_block(double s, double g, double drive_p, double drive_x,
                                 double drive_xp, double x2_0, double p2_0, BlockForm form) {
  const double e = std::exp(-g * s);
  const double c = std::cos(2.0 * s);
  const double sn = std::sin(2.0 * s);
  const double phi = relaxation_integral(g, s);
  const double den = g * g + 4.0;

  OscillatorBlock out;
  out.p2 = 0.5 * p2_0 * e * (1.0 + c) + 0.5 * x2_0 * e * (1.0 - c) +
           drive_p / den * (g * (1.0 - 0.5 * e * (1.0 + c)) + 2.0 * phi + e * sn) +
           drive_x / (2.0 * den) * (-g * e * (1.0 - c) + 4.0 * phi - 2.0 * e * sn) +
           drive_xp / den * (2.0 * (1.0 - e * c) - g * e * sn);

  const double sin_sign = form == BlockForm::Exact ? 1.0 : -1.0;
  out.xp = 0.5 * (p2_0 - x2_0) * e * sn +
           (drive_p - drive_x) / den * (1.0 - e * (c + 0.5 * g * sn)) -
           drive_xp / den * (g * (1.0 - e * c) + sin_sign * 2.0 * e * sn);

  out.x2 = 0.5 * x2_0 * e * (1.0 + c) + 0.5 * p2_0 * e * (1.0 - c) +
           drive_p / (2.0 * den) * (-g * e * (1.0 - c) + 4.0 * phi - 2.0 * e * sn) +
           drive_x / (2.0 * den) * (g * (1.0 - e * c) + den * phi + 2.0 * e * sn) +
           drive_xp / den * (-2.0 * (1.0 - e * c) + g * e * sn);
  return out;
}

struct CrossConstants {
  double r, g, plus, minus, denom, drive;
};

CrossConstants cross_constants(const ClosedFormParams& p) {
  CrossConstants k;
  k.r = p.osc.r();
  k.g = p.rates.gamma;
  k.plus = k.g * k.g + (1.0 + k.r) * (1.0 + k.r);
  k.minus = k.g * k.g + (1.0 - k.r) * (1.0 - k.r);
  k.denom = k.plus * k.minus;
  k.drive = p.h12r / p.osc.omega_a;
  return k;
}

}  // namespace

OscillatorBlock a_block(double tau, const ClosedFormParams& p, BlockForm form) {
  const double w = p.osc.omega_a;
  return oscillator_block(tau * w / p.osc.lambda, p.rates.gamma_a, p.h11 / w, p.h33 / w,
                          p.h13r / w, p.init.a1, p.init.b1, form);
}

OscillatorBlock b_block(double tau, const ClosedFormParams& p, BlockForm form) {
  const double w = p.osc.omega_b;
  return oscillator_block(tau * w / p.osc.lambda, p.rates.gamma_b, p.h22 / w, p.h44 / w,
                          p.h24r / w, p.init.a2, p.init.b2, form);
}

CrossBlock cross_block_asymptote(const ClosedFormParams& p) {
  const CrossConstants k = cross_constants(p);
  CrossBlock out;
  out.A12 = k.drive * k.g * (k.g * k.g + 1.0 + k.r * k.r) / k.denom;
  out.B12 = k.drive * (k.g * k.g + 1.0 + k.r * k.r - k.r) / k.denom;
  out.B21 = k.drive * (k.g * k.g + 1.0) / k.denom;
  out.C12 = k.drive * k.g * k.r / k.denom;
  return out;
}

CrossBlock cross_block(double tau, const ClosedFormParams& p) {
  const CrossConstants k = cross_constants(p);
  if (k.r == 1.0)
    throw UnsupportedParameterError(
        "cross-block closed form has 1/(1 - r) terms and is undefined for r = 1");

  const double s = tau * p.osc.omega_a / p.osc.lambda;
  const double e = std::exp(-k.g * s);
  const double a12 = p.init.a12;
  const double b12 = p.init.b12;
  const double r = k.r;
  const double g = k.g;
  const double h = k.drive;

  const double cos_a = std::cos(s);
  const double sin_a = std::sin(s);
  const double cos_b = std::cos(r * s);
  const double sin_b = std::sin(r * s);
  const double cos_sum = std::cos((1.0 + r) * s);
  const double sin_sum = std::sin((1.0 + r) * s);
  const double cos_diff = std::cos((1.0 - r) * s);
  const double sin_diff = std::sin((1.0 - r) * s);

  const CrossBlock asym = cross_block_asymptote(p);
  CrossBlock out;

  out.A12 = b12 * e * cos_a * cos_b + a12 * e * sin_a * sin_b + asym.A12 -
            h * g * e / 2.0 * (cos_sum / k.plus + cos_diff / k.minus) +
            h * e / 2.0 * ((1.0 + r) * sin_sum / k.plus - (1.0 - r) * sin_diff / k.minus);

  out.B12 = b12 * e / 4.0 * (sin_sum + sin_diff) -
            a12 * e / 2.0 * (3.0 / (1.0 + r) * sin_sum + 1.0 / (1.0 - r) * sin_diff) +
            asym.B12 -
            h * 3.0 * e / (4.0 * (1.0 + r) * k.plus) * (g * sin_sum + (1.0 + r) * cos_sum) -
            h * e / (4.0 * (1.0 - r) * k.minus) * (g * sin_diff + (1.0 - r) * cos_diff);

  out.B21 = b12 * e / (4.0 * (1.0 + r)) *
                ((2.0 + r) / (1.0 + r) * sin_sum + (2.0 - r) / (1.0 - r) * sin_diff) -
            a12 * e / 2.0 * (sin_sum + sin_diff) + asym.B21 -
            h * (2.0 + r) * e / (4.0 * (1.0 + r) * k.plus) * (-g * sin_sum + (1.0 + r) * cos_sum) -
            h * (2.0 - r) * e / (4.0 * (1.0 - r) * k.minus) *
                (-g * sin_diff + (1.0 - r) * cos_diff);

  out.C12 = a12 * e * cos_a * cos_b + b12 * e * sin_a * sin_b + asym.C12 +
            h * e / (4.0 * k.plus) * (g * cos_sum - (1.0 + r) * sin_sum) -
            h * e / (4.0 * k.minus) * (g * cos_diff - (1.0 - r) * sin_diff);
  return out;
}

CovarianceState closed_form_state(double tau, const ClosedFormParams& p) {
  const OscillatorBlock a = a_block(tau, p);
  const OscillatorBlock b = b_block(tau, p);
  const CrossBlock c = cross_block(tau, p);
  CovarianceState s;
  s.tau = tau;
  s.A11 = a.p2;
  s.B11 = a.xp;
  s.C11 = a.x2;
  s.A22 = b.p2;
  s.B22 = b.xp;
  s.C22 = b.x2;
  s.A12 = c.A12;
  s.B12 = c.B12;
  s.B21 = c.B21;
  s.C12 = c.C12;
  return s;
}

AsymptoticDeterminant det_cs_asymptotic(const ClosedFormParams& p) {
  const CrossConstants k = cross_constants(p);
  if (!(k.g > 0.0))
    throw UnsupportedParameterError("asymptotic det C_s requires Gamma > 0");
  const double r = k.r;
  const double g2 = k.g * k.g;
  const double scale = p.h12r / (p.osc.omega_a * k.plus * k.minus);
  const double bracket =
      (r - 1.0) * g2 * g2 + g2 * (r * r * r - r * r + 2.0 * r - 2.0) - (r * r - r + 1.0);
  AsymptoticDeterminant out;
  out.value = scale * scale * bracket;
  out.entangled = out.value < 0.0;
  return out;
}

}  // namespace qdo
