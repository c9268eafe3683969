#pragma once

// Analytic (Laplace-transform) solutions of the decoupled model, written in the
// scaled time s = tau * w_A / lambda.
//
// The oscillator blocks are exact solutions of the decoupled equations. The
// cross-block expressions contain coefficients that do not solve the
// cross-correlation equations; the RK4 trajectory is the reference for those
// four entries.

#include "qdo/lindblad_dynamics.hpp"
#include "qdo/simon_model.hpp"
#include "qdo/state_space.hpp"

namespace qdo {

struct ClosedFormParams {
  OscillatorParams osc;
  DampingRates rates;
  double h11 = 0.0, h33 = 0.0, h13r = 0.0;
  double h22 = 0.0, h44 = 0.0, h24r = 0.0;
  double h12r = 0.0;
  SimonParams init;

  /// Throws ModelViolationError if the couplings are outside the simplified model.
  static ClosedFormParams from(const OscillatorParams& osc, const LindbladCouplings& h,
                               const SimonParams& init);
};

/// (momentum, mixed, position) second moments of one oscillator.
struct OscillatorBlock {
  double p2 = 0.0;  // A_ii
  double xp = 0.0;  // B_ii
  double x2 = 0.0;  // C_ii
};

struct CrossBlock {
  double A12 = 0.0;
  double B12 = 0.0;
  double B21 = 0.0;
  double C12 = 0.0;
};

enum class BlockForm {
  Exact,    // Re h13 term of B11 with +2 e^{-Gs} sin 2s (solves the equations of motion)
  FlippedSign,  // same term with -2 e^{-Gs} sin 2s
};

OscillatorBlock a_block(double tau, const ClosedFormParams& p, BlockForm form = BlockForm::Exact);
/// a_block under w_A -> w_B, Gamma_A -> Gamma_B, h11 -> h22, h33 -> h44,
/// Re h13 -> Re h24, (a1, b1) -> (a2, b2).
OscillatorBlock b_block(double tau, const ClosedFormParams& p, BlockForm form = BlockForm::Exact);

/// Throws UnsupportedParameterError when r == 1 (1/(1 - r) terms).
CrossBlock cross_block(double tau, const ClosedFormParams& p);

/// tau-independent terms of the cross-block expressions (their tau -> inf limit).
/// Valid for any r.
CrossBlock cross_block_asymptote(const ClosedFormParams& p);

/// All ten coefficients at tau. Throws for r == 1 (see cross_block).
CovarianceState closed_form_state(double tau, const ClosedFormParams& p);

struct AsymptoticDeterminant {
  double value = 0.0;
  bool entangled = false;  // value < 0
};

/// Closed-form det C_s at tau -> inf, independent of the initial data.
/// Throws UnsupportedParameterError unless gamma > 0.
AsymptoticDeterminant det_cs_asymptotic(const ClosedFormParams& p);

}  // namespace qdo
