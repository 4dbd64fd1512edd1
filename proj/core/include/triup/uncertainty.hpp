#pragma once

#include <array>
#include <cstddef>

#include "triup/linear_operator.hpp"
#include "triup/tolerances.hpp"
#include "triup/tri_product_space.hpp"

namespace triup {

/// Every quantity of one inequality-chain evaluation.
///
/// The chain is
///   (1/27)(dA+dB+dC)^3  >=  dA*dB*dC  >=  |<(ABC-aBC-bAC-cAB)x,x,x> + 2abc|
/// and the right side must agree with the centered form
/// |<Ax-ax, Bx-bx, Cx-cx>|, which the two fields rhs_expanded /
/// rhs_centered compute through deliberately separate code paths.
struct ChainReport {
  double a = 0.0, b = 0.0, c = 0.0;              // 3-means
  double delta_a = 0.0, delta_b = 0.0, delta_c = 0.0;
  double lhs_product = 0.0;                      // dA*dB*dC
  double amgm_bound = 0.0;                       // (1/27)(dA+dB+dC)^3
  double rhs_expanded = 0.0;
  double rhs_centered = 0.0;
  double identity_deviation = 0.0;               // |rhs_expanded - rhs_centered|
  double identity_scale = 0.0;                   // magnitudes entering both forms
  bool chain_ok = false;
  double margin = 0.0;                           // lhs_product - rhs_expanded
  bool degenerate_tight = false;  // both sides below the absolute floor
};

/// A computed quantity together with the sum of absolute values that
/// entered it, which relative tolerances scale against.
struct ValueWithScale {
  double value = 0.0;
  double scale = 0.0;
};

/// <Ax, x, x> for cube-normalized x (PreconditionError otherwise).
double mean3(const TriProductSpace& space, const LinearOperator& op,
             const StateVector& x, const Tolerances& tols = {});

/// ||Ax - <Ax,x,x> x||, the 3-uncertainty of op at x.
double delta3(const TriProductSpace& space, const LinearOperator& op,
              const StateVector& x, const Tolerances& tols = {});

/// |<Ax-ax, Bx-bx, Cx-cx>| via centered vectors.
double centered_rhs(const TriProductSpace& space, const LinearOperator& a_op,
                    const LinearOperator& b_op, const LinearOperator& c_op,
                    const StateVector& x, const Tolerances& tols = {});
ValueWithScale centered_rhs_detailed(const TriProductSpace& space,
                                     const LinearOperator& a_op,
                                     const LinearOperator& b_op,
                                     const LinearOperator& c_op,
                                     const StateVector& x,
                                     const Tolerances& tols = {});

/// |<(ABC - aBC - bAC - cAB)x, x, x> + 2abc| via operator compositions,
/// never via the centered vectors.
double expanded_rhs(const TriProductSpace& space, const LinearOperator& a_op,
                    const LinearOperator& b_op, const LinearOperator& c_op,
                    const StateVector& x, const Tolerances& tols = {});
ValueWithScale expanded_rhs_detailed(const TriProductSpace& space,
                                     const LinearOperator& a_op,
                                     const LinearOperator& b_op,
                                     const LinearOperator& c_op,
                                     const StateVector& x,
                                     const Tolerances& tols = {});

/// (1/27)(da+db+dc)^3. Inputs must be nonnegative.
double amgm_bound(double delta_a, double delta_b, double delta_c);

/// Full chain evaluation. All three operators must pass
/// check_3_self_adjoint (RejectedInstanceError naming the witness
/// otherwise) and x must be cube-normalized.
ChainReport verify_chain(const TriProductSpace& space,
                         const LinearOperator& a_op,
                         const LinearOperator& b_op,
                         const LinearOperator& c_op, const StateVector& x,
                         const Tolerances& tols = {});

/// The seven values <PQRx,x,x> over all orderings of {A,B,C} plus
/// <Ax,Bx,Cx>, which 3-self-adjointness forces to coincide.
struct OrderInvarianceReport {
  std::array<double, 7> values{};  // ABC, ACB, BAC, BCA, CAB, CBA, <Ax,Bx,Cx>
  double max_deviation = 0.0;      // max pairwise absolute difference
  double scale = 0.0;              // 1 + max |value|
};

/// Callers are responsible for the operators having passed the
/// 3-self-adjointness check; the report only measures the spread.
OrderInvarianceReport operator_order_invariance(const TriProductSpace& space,
                                                const LinearOperator& a_op,
                                                const LinearOperator& b_op,
                                                const LinearOperator& c_op,
                                                const StateVector& x);

}  // namespace triup
