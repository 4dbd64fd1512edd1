#include "triup/classical.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace triup {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_unit(std::span<const double> h, const Tolerances& tols) {
  const double n = norm2(h);
  if (std::abs(n - 1.0) > tols.bound(1.0 + n))
    throw PreconditionError("h is not a Euclidean unit vector: ||h|| = " +
                            std::to_string(n));
}

void require_symmetric(const LinearOperator& op, const Tolerances& tols) {
  if (op.is_diagonal()) return;
  double max_entry = 0.0;
  for (std::size_t i = 0; i < op.dimension(); ++i)
    for (std::size_t j = 0; j < op.dimension(); ++j)
      max_entry = std::max(max_entry, std::abs(op.entry(i, j)));
  for (std::size_t i = 0; i < op.dimension(); ++i)
    for (std::size_t j = i + 1; j < op.dimension(); ++j)
      if (std::abs(op.entry(i, j) - op.entry(j, i)) > tols.bound(max_entry))
        throw PreconditionError(
            "operator is not symmetric at entry (" + std::to_string(i) + "," +
            std::to_string(j) + ")");
}

}  // namespace

ClassicalDeltaResult classical_delta(const LinearOperator& a_op,
                                     std::span<const double> h,
                                     const Tolerances& tols) {
  if (a_op.dimension() != h.size())
    throw DimensionError("classical_delta: operator dimension " +
                         std::to_string(a_op.dimension()) +
                         " does not match vector length " +
                         std::to_string(h.size()));
  require_unit(h, tols);
  require_symmetric(a_op, tols);

  const std::vector<double> ah = a_op.apply_raw(h);
  ClassicalDeltaResult result;
  result.mean = dot(ah, h);

  std::vector<double> centered(ah.size());
  for (std::size_t i = 0; i < ah.size(); ++i)
    centered[i] = ah[i] - result.mean * h[i];
  result.norm_form = norm2(centered);

  const double ah_sq = dot(ah, ah);
  double arg = ah_sq - result.mean * result.mean;
  const double arg_tol = tols.bound(ah_sq + result.mean * result.mean);
  if (arg < 0.0) {
    if (arg < -arg_tol)
      throw PreconditionError(
          "variance argument ||Ah||^2 - <Ah,h>^2 is negative beyond "
          "tolerance: " + std::to_string(arg));
    arg = 0.0;
  }
  result.moment_form = std::sqrt(arg);

  // for symmetric A and unit h the two forms are the same quantity
  if (std::abs(result.norm_form - result.moment_form) >
      tols.bound(1.0 + result.norm_form + result.moment_form + ah_sq))
    throw Error("classical_delta: the norm and moment forms disagree: " +
                std::to_string(result.norm_form) + " vs " +
                std::to_string(result.moment_form));
  return result;
}

ClassicalReport classical_verify(const LinearOperator& a_op,
                                 const LinearOperator& b_op,
                                 std::span<const double> h,
                                 const Tolerances& tols) {
  if (a_op.dimension() != b_op.dimension())
    throw DimensionError("classical_verify: operator dimensions differ");
  const ClassicalDeltaResult da = classical_delta(a_op, h, tols);
  const ClassicalDeltaResult db = classical_delta(b_op, h, tols);

  ClassicalReport report;
  report.mean_a = da.mean;
  report.mean_b = db.mean;
  report.delta_a = da.norm_form;
  report.delta_b = db.norm_form;
  report.delta_a_moment = da.moment_form;
  report.delta_b_moment = db.moment_form;

  report.half_sum_of_squares =
      0.5 * (da.norm_form * da.norm_form + db.norm_form * db.norm_form);
  const double sum = da.norm_form + db.norm_form;
  report.quarter_square_of_sum = 0.25 * sum * sum;
  report.uncertainty_product = da.norm_form * db.norm_form;

  const std::vector<double> ah = a_op.apply_raw(h);
  const std::vector<double> bh = b_op.apply_raw(h);
  const std::vector<double> abh = a_op.apply_raw(bh);
  const std::vector<double> bah = b_op.apply_raw(ah);
  const double t_ab = dot(abh, h);
  const double t_ba = dot(bah, h);
  report.commutator_expectation = t_ab - t_ba;
  report.anticommutator_expectation = t_ab + t_ba;
  report.robertson_rhs = 0.5 * std::abs(report.commutator_expectation);

  const double cross = dot(ah, bh);
  report.schrodinger_rhs = std::abs(cross - da.mean * db.mean);

  const double anti_centered =
      report.anticommutator_expectation - 2.0 * da.mean * db.mean;
  const double identity_rhs =
      0.5 * std::sqrt(report.commutator_expectation *
                          report.commutator_expectation +
                      anti_centered * anti_centered);
  report.schrodinger_identity_deviation =
      std::abs(report.schrodinger_rhs - identity_rhs);

  const double scale = 1.0 + report.half_sum_of_squares +
                       report.uncertainty_product + std::abs(cross) +
                       std::abs(t_ab) + std::abs(t_ba) +
                       std::abs(da.mean * db.mean);
  const double tol = tols.bound(scale);
  report.hr_link1_ok =
      report.half_sum_of_squares >= report.quarter_square_of_sum - tol;
  report.hr_link2_ok =
      report.quarter_square_of_sum >= report.uncertainty_product - tol;
  report.hr_link3_ok = report.uncertainty_product >= report.robertson_rhs - tol;
  report.hrs_ok = report.uncertainty_product >= report.schrodinger_rhs - tol;
  report.hrs_ge_hr = report.schrodinger_rhs >= report.robertson_rhs - tol;
  report.commutator_vanishes =
      std::abs(report.commutator_expectation) <=
      kIdentityRelTol * (1.0 + std::abs(t_ab) + std::abs(t_ba));
  report.identity_ok = report.schrodinger_identity_deviation <= tol;
  report.all_ok = report.hr_link1_ok && report.hr_link2_ok &&
                  report.hr_link3_ok && report.hrs_ok && report.hrs_ge_hr &&
                  report.commutator_vanishes && report.identity_ok;
  return report;
}

}  // namespace triup
