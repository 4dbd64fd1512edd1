#include "triup/tri_product_space.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "triup/errors.hpp"
#include "triup/rng.hpp"

namespace triup {

namespace {

// Total order on doubles: by value, then by bit pattern so the +0/-0
// pair has a fixed arrangement.
bool canonical_less(double a, double b) {
  if (a != b) return a < b;
  return std::bit_cast<std::uint64_t>(a) < std::bit_cast<std::uint64_t>(b);
}

// Product of the three coordinate factors in canonical order. This is
// what makes eval3 bit-identical under argument permutations: the sum
// runs in index order and each term multiplies in value order.
double ordered_triple_product(double a, double b, double c) {
  if (canonical_less(b, a)) std::swap(a, b);
  if (canonical_less(c, b)) {
    std::swap(b, c);
    if (canonical_less(b, a)) std::swap(a, b);
  }
  return (a * b) * c;
}

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

TriProductSpace TriProductSpace::pointwise(std::vector<double> weights,
                                           std::string label) {
  if (weights.empty())
    throw InvalidSpaceError("pointwise space needs at least one weight");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0)
      throw InvalidSpaceError("weight[" + std::to_string(i) +
                              "] = " + std::to_string(weights[i]) +
                              " is not a strictly positive finite real");
  }
  return TriProductSpace(std::move(weights), std::move(label));
}

TriProductSpace TriProductSpace::unit(std::size_t dimension, std::string label) {
  if (dimension == 0) throw InvalidSpaceError("dimension must be positive");
  return pointwise(std::vector<double>(dimension, 1.0), std::move(label));
}

TriProductSpace TriProductSpace::midpoint_quadrature(std::size_t nodes,
                                                     std::string label) {
  if (nodes == 0) throw InvalidSpaceError("quadrature needs at least one node");
  if (label.empty()) label = "midpoint-" + std::to_string(nodes);
  const double w = 1.0 / static_cast<double>(nodes);
  return pointwise(std::vector<double>(nodes, w), std::move(label));
}

TriProductSpace TriProductSpace::trapezoid_quadrature(std::size_t nodes,
                                                      std::string label) {
  if (nodes < 2) throw InvalidSpaceError("trapezoid rule needs >= 2 nodes");
  if (label.empty()) label = "trapezoid-" + std::to_string(nodes);
  const double h = 1.0 / static_cast<double>(nodes - 1);
  std::vector<double> w(nodes, h);
  w.front() = h / 2.0;
  w.back() = h / 2.0;
  return pointwise(std::move(w), std::move(label));
}

TriProductSpace TriProductSpace::unchecked(std::vector<double> weights,
                                           std::string label) {
  return TriProductSpace(std::move(weights), std::move(label));
}

void TriProductSpace::require_dimension(std::size_t n, const char* what) const {
  if (n != weights_.size())
    throw DimensionError(std::string(what) + ": got length " +
                         std::to_string(n) + ", space has dimension " +
                         std::to_string(weights_.size()));
}

StateVector TriProductSpace::state(std::vector<double> coords) const {
  require_dimension(coords.size(), "state");
  const double s = eval3(coords, coords, coords);
  return StateVector(std::move(coords), s);
}

StateVector TriProductSpace::basis_state(std::size_t i) const {
  if (i >= dimension())
    throw DimensionError("basis index " + std::to_string(i) +
                         " out of range for dimension " +
                         std::to_string(dimension()));
  std::vector<double> coords(dimension(), 0.0);
  coords[i] = 1.0;
  return state(std::move(coords));
}

double TriProductSpace::eval3(std::span<const double> x,
                              std::span<const double> y,
                              std::span<const double> z) const {
  require_dimension(x.size(), "eval3 first argument");
  require_dimension(y.size(), "eval3 second argument");
  require_dimension(z.size(), "eval3 third argument");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    acc += ordered_triple_product(x[i], y[i], z[i]) * weights_[i];
  return acc;
}

double TriProductSpace::eval3(const StateVector& x, const StateVector& y,
                              const StateVector& z) const {
  return eval3(x.span(), y.span(), z.span());
}

double TriProductSpace::norm(std::span<const double> x) const {
  require_dimension(x.size(), "norm");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double a = std::abs(x[i]);
    acc += ((a * a) * a) * weights_[i];
  }
  // signed cube root: negative accumulations only arise for corrupted
  // test spaces, where a sign-carrying "norm" makes the Holder check fail
  // with a finite witness instead of NaN
  return std::cbrt(acc);
}

double TriProductSpace::norm(const StateVector& x) const {
  return norm(x.span());
}

StateVector TriProductSpace::cube_normalize(const StateVector& x,
                                            double epsilon) const {
  const double s = x.cube_sum();
  if (!(std::abs(s) >= epsilon))
    throw NearNullCubeError("cannot cube-normalize: |<x,x,x>| = " +
                            std::to_string(std::abs(s)) + " < " +
                            std::to_string(epsilon));
  const double scale = std::cbrt(s);
  std::vector<double> coords(x.coords());
  for (double& c : coords) c /= scale;
  return state(std::move(coords));
}

StateVector TriProductSpace::cube_normalize(std::span<const double> coords,
                                            double epsilon) const {
  return cube_normalize(state(std::vector<double>(coords.begin(), coords.end())),
                        epsilon);
}

std::vector<double> midpoint_nodes(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i)
    t[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return t;
}

AxiomReport check_axioms(const TriProductSpace& space,
                         std::size_t sample_budget, std::uint64_t seed,
                         double tol) {
  AxiomReport report;
  report.samples = sample_budget;
  if (sample_budget == 0) {
    report.vacuous = true;
    return report;
  }

  const std::size_t n = space.dimension();
  Sampler rng(seed);
  std::vector<double> x(n), y(n), z(n), w(n), scratch(n);
  double worst_holder = std::numeric_limits<double>::infinity();

  for (std::size_t sample = 0; sample < sample_budget; ++sample) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.signed_unit();
      y[i] = rng.signed_unit();
      z[i] = rng.signed_unit();
      w[i] = rng.signed_unit();
    }
    const double alpha = rng.uniform(-2.0, 2.0);

    const double base = space.eval3(x, y, z);

    // (i) symmetry over all six argument orders, bit-exact
    const std::span<const double> slots[3] = {x, y, z};
    static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : kPerms) {
      const double v = space.eval3(slots[p[0]], slots[p[1]], slots[p[2]]);
      if (!bit_equal(v, base)) report.symmetry_ok = false;
      report.symmetry_max_deviation =
          std::max(report.symmetry_max_deviation, std::abs(v - base));
    }

    // (ii) homogeneity in the first slot
    for (std::size_t i = 0; i < n; ++i) scratch[i] = alpha * x[i];
    const double hom_lhs = space.eval3(scratch, y, z);
    const double hom_rhs = alpha * base;
    const double hom_dev = std::abs(hom_lhs - hom_rhs) /
                           (1.0 + std::abs(hom_lhs) + std::abs(hom_rhs));
    report.homogeneity_max_deviation =
        std::max(report.homogeneity_max_deviation, hom_dev);
    if (hom_dev > tol) report.homogeneity_ok = false;

    // (iii) additivity in the first slot
    for (std::size_t i = 0; i < n; ++i) scratch[i] = x[i] + w[i];
    const double add_lhs = space.eval3(scratch, y, z);
    const double add_w = space.eval3(w, y, z);
    const double add_rhs = base + add_w;
    const double add_dev =
        std::abs(add_lhs - add_rhs) /
        (1.0 + std::abs(add_lhs) + std::abs(base) + std::abs(add_w));
    report.additivity_max_deviation =
        std::max(report.additivity_max_deviation, add_dev);
    if (add_dev > tol) report.additivity_ok = false;

    // (iv) Holder bound
    const double norm_product = space.norm(x) * space.norm(y) * space.norm(z);
    const double margin = norm_product - std::abs(base);
    const double scaled = margin / (1.0 + std::abs(norm_product));
    if (scaled < worst_holder) {
      worst_holder = scaled;
      if (margin < -kHolderRelTol * (1.0 + std::abs(norm_product))) {
        HolderWitness witness;
        witness.x = x;
        witness.y = y;
        witness.z = z;
        witness.form_value = base;
        witness.norm_product = norm_product;
        witness.margin = margin;
        report.holder_witness = std::move(witness);
      }
    }
    if (margin < -kHolderRelTol * (1.0 + std::abs(norm_product)))
      report.holder_ok = false;
  }

  report.holder_worst_scaled_margin =
      std::isfinite(worst_holder) ? worst_holder : 0.0;
  return report;
}

}  // namespace triup
