#pragma once

// Two-mode Gaussian in the reduced parameterisation
//   <x^2> = a1, <p_x^2> = b1, <y^2> = a2, <p_y^2> = b2, <xy> = a12, <p_x p_y> = b12,
// all other second moments zero.

#include <optional>
#include <ostream>

#include "qdo/state_space.hpp"
#include "qdo/validation.hpp"

namespace qdo {

struct SimonParams {
  double a1 = 0.5;
  double b1 = 0.5;
  double a2 = 0.5;
  double b2 = 0.5;
  double a12 = 0.0;
  double b12 = 0.0;

  double k_a() const { return a1 * a2 - a12 * a12; }
  double k_b() const { return b1 * b2 - b12 * b12; }

  bool operator==(const SimonParams&) const = default;
};

/// Case (A): minimum-uncertainty product state, no cross correlations.
SimonParams simon_case_a();
/// Case (B): minimum-uncertainty blocks with a12 = 1/2, b12 = -1/2.
SimonParams simon_case_b();

/// A squared length that may be unbounded (zero denominator).
class LengthSq {
 public:
  LengthSq() = default;
  explicit LengthSq(double v) : value_(v) {}
  static LengthSq unbounded() { return LengthSq(std::nullopt); }
  /// numerator / denominator, unbounded when denominator == 0.
  static LengthSq ratio(double numerator, double denominator);

  bool is_unbounded() const { return !value_.has_value(); }
  double value() const;  // throws std::bad_optional_access when unbounded
  std::optional<double> maybe() const { return value_; }

  bool operator==(const LengthSq&) const = default;

 private:
  explicit LengthSq(std::optional<double> v) : value_(v) {}
  std::optional<double> value_;
};

std::ostream& operator<<(std::ostream& os, const LengthSq& l);

struct SimonLengths {
  LengthSq corr_a, corr_b;
  LengthSq decoh_a, decoh_b;
  LengthSq mix_a, mix_b;
  LengthSq comp_corr_a, comp_corr_b;
  LengthSq comp_decoh_a, comp_decoh_b;
  LengthSq ent_1;  // 1 / b12
  LengthSq ent_2;  // K_A / a12
  // Bipartite inequality E^-2 Etilde^-2 <= 1/(4 K_A) + 2 K_B.
  LengthSq ineq_lhs;
  LengthSq ineq_rhs;
  bool ineq_holds = true;
};

/// Throws ValidationError on nonpositive variances; Schwarz, Heisenberg and
/// the bipartite forms are reported as soft checks.
ValidationReport validate_simon(const SimonParams& p);

CovarianceState to_covariance_state(const SimonParams& p);

/// Inverse of to_covariance_state. Throws ValidationError if any position-momentum
/// cross covariance is nonzero.
SimonParams from_covariance_state(const CovarianceState& s);

SimonLengths simon_lengths(const SimonParams& p);

/// Composite density matrix <x1 y1| rho |x2 y2>. Throws SingularKernelError if K_A <= 0.
double simon_density_eval(const SimonParams& p, double x1, double y1, double x2, double y2);

enum class Prefactor {
  TraceNormalized,  // prefactor (2 pi a)^{-1/2} for both oscillators
  MomentumVariance, // oscillator B uses (2 pi b2)^{-1/2}; not trace-normalised
};

/// Reduced density matrix <x1| rho_S,A |x2> (or the B analogue).
double simon_reduced_density_eval(const SimonParams& p, Subsystem which, double x1, double x2,
                                  Prefactor mode = Prefactor::TraceNormalized);

}  // namespace qdo
