#pragma once

#include <span>

#include "triup/linear_operator.hpp"
#include "triup/tolerances.hpp"

namespace triup {

/// Euclidean variance of A at a unit vector h, in both algebraic forms.
struct ClassicalDeltaResult {
  double norm_form = 0.0;    // ||Ah - <Ah,h> h||_2
  double moment_form = 0.0;  // sqrt(||Ah||^2 - <Ah,h>^2)
  double mean = 0.0;         // <Ah, h>
};

/// Requires a symmetric operator and ||h||_2 = 1; the two forms agree
/// within tolerance by construction (the square-root argument is
/// clamped at zero when it dips below by no more than the tolerance).
ClassicalDeltaResult classical_delta(const LinearOperator& a_op,
                                     std::span<const double> h,
                                     const Tolerances& tols = {});

/// Two-operator Euclidean reference chain:
///   1/2 (dA^2 + dB^2) >= 1/4 (dA + dB)^2 >= dA dB >= 1/2 |<[A,B]h,h>|
/// plus the stronger bound dA dB >= |<Ah,Bh> - <Ah,h><Bh,h>| and its
/// commutator/anticommutator identity. For real symmetric inputs the
/// commutator expectation <[A,B]h,h> vanishes identically, which the
/// report states rather than hides.
struct ClassicalReport {
  double mean_a = 0.0, mean_b = 0.0;
  double delta_a = 0.0, delta_b = 0.0;          // norm forms
  double delta_a_moment = 0.0, delta_b_moment = 0.0;
  double half_sum_of_squares = 0.0;             // 1/2 (dA^2 + dB^2)
  double quarter_square_of_sum = 0.0;           // 1/4 (dA + dB)^2
  double uncertainty_product = 0.0;             // dA dB
  double robertson_rhs = 0.0;                   // 1/2 |<[A,B]h,h>|
  double schrodinger_rhs = 0.0;                 // |<Ah,Bh> - <Ah,h><Bh,h>|
  double commutator_expectation = 0.0;          // <[A,B]h,h>
  double anticommutator_expectation = 0.0;      // <{A,B}h,h>
  double schrodinger_identity_deviation = 0.0;
  bool hr_link1_ok = false;   // half_sum >= quarter_square
  bool hr_link2_ok = false;   // quarter_square >= product
  bool hr_link3_ok = false;   // product >= robertson_rhs
  bool hrs_ok = false;        // product >= schrodinger_rhs
  bool hrs_ge_hr = false;     // schrodinger_rhs >= robertson_rhs
  bool commutator_vanishes = false;  // real symmetric structural fact
  bool identity_ok = false;
  bool all_ok = false;
};

ClassicalReport classical_verify(const LinearOperator& a_op,
                                 const LinearOperator& b_op,
                                 std::span<const double> h,
                                 const Tolerances& tols = {});

}  // namespace triup
