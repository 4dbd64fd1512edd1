#include "triup/uncertainty.hpp"

#include <cmath>
#include <string>

namespace triup {

namespace {

void require_cube_normalized(const StateVector& x, const Tolerances& tols) {
  const double s = x.cube_sum();
  if (std::abs(s - 1.0) > tols.bound(1.0 + std::abs(s)))
    throw PreconditionError("state is not cube-normalized: <x,x,x> = " +
                            std::to_string(s));
}

// Ax and <Ax,x,x> without re-checking preconditions.
double mean_of(const TriProductSpace& space, const LinearOperator& op,
               const StateVector& x, std::vector<double>& image) {
  image = op.apply_raw(x.span());
  return space.eval3(image, x.span(), x.span());
}

// image - mean * x, the centered vector.
std::vector<double> centered_vector(const std::vector<double>& image,
                                    double mean, const StateVector& x) {
  std::vector<double> u(image.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = image[i] - mean * x[i];
  return u;
}

}  // namespace

double mean3(const TriProductSpace& space, const LinearOperator& op,
             const StateVector& x, const Tolerances& tols) {
  require_cube_normalized(x, tols);
  std::vector<double> image;
  return mean_of(space, op, x, image);
}

double delta3(const TriProductSpace& space, const LinearOperator& op,
              const StateVector& x, const Tolerances& tols) {
  require_cube_normalized(x, tols);
  std::vector<double> image;
  const double mean = mean_of(space, op, x, image);
  return space.norm(centered_vector(image, mean, x));
}

ValueWithScale centered_rhs_detailed(const TriProductSpace& space,
                                     const LinearOperator& a_op,
                                     const LinearOperator& b_op,
                                     const LinearOperator& c_op,
                                     const StateVector& x,
                                     const Tolerances& tols) {
  require_cube_normalized(x, tols);
  std::vector<double> ax, bx, cx;
  const double a = mean_of(space, a_op, x, ax);
  const double b = mean_of(space, b_op, x, bx);
  const double c = mean_of(space, c_op, x, cx);
  const std::vector<double> u = centered_vector(ax, a, x);
  const std::vector<double> v = centered_vector(bx, b, x);
  const std::vector<double> w = centered_vector(cx, c, x);
  ValueWithScale out;
  out.value = std::abs(space.eval3(u, v, w));
  out.scale = space.norm(u) * space.norm(v) * space.norm(w);
  return out;
}

double centered_rhs(const TriProductSpace& space, const LinearOperator& a_op,
                    const LinearOperator& b_op, const LinearOperator& c_op,
                    const StateVector& x, const Tolerances& tols) {
  return centered_rhs_detailed(space, a_op, b_op, c_op, x, tols).value;
}

ValueWithScale expanded_rhs_detailed(const TriProductSpace& space,
                                     const LinearOperator& a_op,
                                     const LinearOperator& b_op,
                                     const LinearOperator& c_op,
                                     const StateVector& x,
                                     const Tolerances& tols) {
  require_cube_normalized(x, tols);
  std::vector<double> ax, bx, cx;
  const double a = mean_of(space, a_op, x, ax);
  const double b = mean_of(space, b_op, x, bx);
  const double c = mean_of(space, c_op, x, cx);

  const LinearOperator bc = compose(b_op, c_op);
  const LinearOperator ac = compose(a_op, c_op);
  const LinearOperator ab = compose(a_op, b_op);
  const LinearOperator abc = compose(a_op, bc);

  const double t_abc = space.eval3(abc.apply_raw(x.span()), x.span(), x.span());
  const double t_bc = space.eval3(bc.apply_raw(x.span()), x.span(), x.span());
  const double t_ac = space.eval3(ac.apply_raw(x.span()), x.span(), x.span());
  const double t_ab = space.eval3(ab.apply_raw(x.span()), x.span(), x.span());

  ValueWithScale out;
  out.value = std::abs(t_abc - a * t_bc - b * t_ac - c * t_ab + 2.0 * a * b * c);
  out.scale = std::abs(t_abc) + std::abs(a * t_bc) + std::abs(b * t_ac) +
              std::abs(c * t_ab) + 2.0 * std::abs(a * b * c);
  return out;
}

double expanded_rhs(const TriProductSpace& space, const LinearOperator& a_op,
                    const LinearOperator& b_op, const LinearOperator& c_op,
                    const StateVector& x, const Tolerances& tols) {
  return expanded_rhs_detailed(space, a_op, b_op, c_op, x, tols).value;
}

double amgm_bound(double delta_a, double delta_b, double delta_c) {
  if (delta_a < 0.0 || delta_b < 0.0 || delta_c < 0.0)
    throw PreconditionError("amgm_bound requires nonnegative uncertainties");
  const double sum = delta_a + delta_b + delta_c;
  return (sum * sum * sum) / 27.0;
}

ChainReport verify_chain(const TriProductSpace& space,
                         const LinearOperator& a_op,
                         const LinearOperator& b_op,
                         const LinearOperator& c_op, const StateVector& x,
                         const Tolerances& tols) {
  const LinearOperator* ops[3] = {&a_op, &b_op, &c_op};
  static constexpr const char* kNames[3] = {"A", "B", "C"};
  for (int i = 0; i < 3; ++i) {
    const SelfAdjointCheck check = check_3_self_adjoint(space, *ops[i]);
    if (!check.ok) throw RejectedInstanceError(kNames[i], *check.witness);
  }
  require_cube_normalized(x, tols);

  ChainReport report;
  std::vector<double> ax, bx, cx;
  report.a = mean_of(space, a_op, x, ax);
  report.b = mean_of(space, b_op, x, bx);
  report.c = mean_of(space, c_op, x, cx);
  report.delta_a = space.norm(centered_vector(ax, report.a, x));
  report.delta_b = space.norm(centered_vector(bx, report.b, x));
  report.delta_c = space.norm(centered_vector(cx, report.c, x));

  report.lhs_product = report.delta_a * report.delta_b * report.delta_c;
  report.amgm_bound = amgm_bound(report.delta_a, report.delta_b, report.delta_c);

  const ValueWithScale expanded =
      expanded_rhs_detailed(space, a_op, b_op, c_op, x, tols);
  const ValueWithScale centered =
      centered_rhs_detailed(space, a_op, b_op, c_op, x, tols);
  report.rhs_expanded = expanded.value;
  report.rhs_centered = centered.value;
  report.identity_deviation = std::abs(expanded.value - centered.value);
  report.identity_scale = 1.0 + expanded.scale + centered.scale;
  report.margin = report.lhs_product - report.rhs_expanded;
  report.degenerate_tight = report.lhs_product < tols.absolute &&
                            report.rhs_expanded < tols.absolute;

  const bool amgm_ok =
      report.amgm_bound >=
      report.lhs_product - tols.bound(report.amgm_bound + report.lhs_product);
  const bool lower_ok =
      report.lhs_product >=
      report.rhs_expanded -
          tols.bound(report.lhs_product + report.rhs_expanded + expanded.scale);
  const bool identity_ok =
      report.identity_deviation <=
      std::max(tols.absolute, kIdentityRelTol * report.identity_scale);
  report.chain_ok = amgm_ok && lower_ok && identity_ok;
  return report;
}

OrderInvarianceReport operator_order_invariance(const TriProductSpace& space,
                                                const LinearOperator& a_op,
                                                const LinearOperator& b_op,
                                                const LinearOperator& c_op,
                                                const StateVector& x) {
  static constexpr int kOrders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const LinearOperator* ops[3] = {&a_op, &b_op, &c_op};

  OrderInvarianceReport report;
  for (int o = 0; o < 6; ++o) {
    const LinearOperator composed =
        compose(*ops[kOrders[o][0]],
                compose(*ops[kOrders[o][1]], *ops[kOrders[o][2]]));
    report.values[o] =
        space.eval3(composed.apply_raw(x.span()), x.span(), x.span());
  }
  report.values[6] = space.eval3(a_op.apply_raw(x.span()),
                                 b_op.apply_raw(x.span()),
                                 c_op.apply_raw(x.span()));

  double lo = report.values[0], hi = report.values[0];
  for (double v : report.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    report.scale = std::max(report.scale, std::abs(v));
  }
  report.max_deviation = hi - lo;
  report.scale += 1.0;
  return report;
}

}  // namespace triup
