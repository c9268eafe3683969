#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qdo/lindblad_dynamics.hpp"
#include "qdo/simon_model.hpp"
#include "qdo/state_space.hpp"

namespace qdo::gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// k / 2^bits with |k| <= max_num: exactly representable, and sums and
  /// products of a few of them stay exact.
  double dyadic(int max_num = 64, int bits = 4) {
    return static_cast<double>(integer(-max_num, max_num)) / static_cast<double>(1 << bits);
  }

  /// Sigma = G G^T + 0.5 I with G entries in [-0.35, 0.35]: every 2x2
  /// principal block has determinant >= 1/4, so the state is physical.
  CovarianceState state() {
    Eigen::Matrix4d g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = uniform(-0.35, 0.35);
    const Eigen::Matrix4d sigma = g * g.transpose() + 0.5 * Eigen::Matrix4d::Identity();
    return from_sigma(sigma);
  }

  /// Unconstrained entries (may be unphysical); for algebraic identities.
  CovarianceState any_state(double scale = 2.0) {
    StateVector v;
    for (auto& x : v) x = uniform(-scale, scale);
    return CovarianceState::from_vector(v);
  }

  CovarianceState dyadic_state() {
    StateVector v;
    for (auto& x : v) x = dyadic();
    return CovarianceState::from_vector(v);
  }

  SimonParams simon() {
    SimonParams p;
    p.a1 = uniform(0.3, 2.0);
    p.b1 = uniform(0.25 / p.a1, 2.0 + 0.25 / p.a1);
    p.a2 = uniform(0.3, 2.0);
    p.b2 = uniform(0.25 / p.a2, 2.0 + 0.25 / p.a2);
    const double ka = std::sqrt(p.a1 * p.a2);
    const double kb = std::sqrt(p.b1 * p.b2);
    p.a12 = uniform(-ka, ka);
    p.b12 = uniform(-kb, kb);
    return p;
  }

  /// Couplings restricted to the simplified model.
  LindbladCouplings simplified_couplings() {
    LindbladCouplings h;
    h.h11 = uniform(0.0, 2.0);
    h.h22 = uniform(0.0, 2.0);
    h.h33 = uniform(0.0, 2.0);
    h.h44 = uniform(0.0, 2.0);
    h.h12.re = uniform(-1.0, 1.0);
    h.h13 = {uniform(-1.0, 1.0), uniform(0.05, 0.5)};
    h.h24 = {uniform(-1.0, 1.0), uniform(0.05, 0.5)};
    return h;
  }

  LindbladCouplings general_couplings() {
    LindbladCouplings h = simplified_couplings();
    h.h12.im = uniform(-0.3, 0.3);
    h.h14 = {uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
    h.h23 = {uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
    h.h34 = {uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
    return h;
  }

  static CovarianceState from_sigma(const Eigen::Matrix4d& sigma) {
    // Sigma = [[C, B^T], [B, A]] over (R1, R2, p1, p2).
    CovarianceState s;
    s.C11 = sigma(0, 0);
    s.C12 = sigma(0, 1);
    s.C22 = sigma(1, 1);
    s.A11 = sigma(2, 2);
    s.A12 = sigma(2, 3);
    s.A22 = sigma(3, 3);
    s.B11 = sigma(2, 0);
    s.B12 = sigma(2, 1);
    s.B21 = sigma(3, 0);
    s.B22 = sigma(3, 1);
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qdo::gen
