#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triup/tolerances.hpp"

namespace triup {

class TriProductSpace;

/// A coordinate vector tied to the space that built it. The cube sum
/// <x,x,x> is computed once at construction and cached.
class StateVector {
 public:
  StateVector() = default;

  const std::vector<double>& coords() const { return coords_; }
  std::span<const double> span() const { return coords_; }
  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// <x,x,x> under the constructing space's form.
  double cube_sum() const { return cube_sum_; }

 private:
  friend class TriProductSpace;
  StateVector(std::vector<double> coords, double cube_sum)
      : coords_(std::move(coords)), cube_sum_(cube_sum) {}

  std::vector<double> coords_;
  double cube_sum_ = 0.0;
};

/// Worst Holder violation seen by check_axioms, with the offending triple.
struct HolderWitness {
  std::vector<double> x, y, z;
  double form_value = 0.0;
  double norm_product = 0.0;
  double margin = 0.0;  // norm_product - |form_value|, negative when violated
};

/// Result of sampling the four 3-product axioms.
struct AxiomReport {
  bool symmetry_ok = true;
  bool homogeneity_ok = true;
  bool additivity_ok = true;
  bool holder_ok = true;

  /// Absolute worst deviation over all six argument permutations.
  /// Canonical accumulation makes this exactly 0 for honest spaces.
  double symmetry_max_deviation = 0.0;
  /// Worst |<ax,y,z> - a<x,y,z>| / (1 + magnitudes).
  double homogeneity_max_deviation = 0.0;
  /// Worst |<x+w,y,z> - <x,y,z> - <w,y,z>| / (1 + magnitudes).
  double additivity_max_deviation = 0.0;
  /// Smallest (norm_product - |form|) / (1 + norm_product) over samples.
  double holder_worst_scaled_margin = 0.0;

  std::optional<HolderWitness> holder_witness;

  std::size_t samples = 0;
  bool vacuous = false;  // budget 0: nothing sampled, all axioms pass

  bool all_ok() const {
    return symmetry_ok && homogeneity_ok && additivity_ok && holder_ok;
  }
};

/// A finite-dimensional real space carrying the weighted pointwise form
///
///   <x,y,z> = sum_i w_i x_i y_i z_i,    ||x|| = (sum_i w_i |x_i|^3)^(1/3)
///
/// with strictly positive weights. Unit weights give R^n and truncated
/// l^3; quadrature weights give a discretized L^3(Omega). For this
/// family axiom (iv), |<x,y,z>| <= ||x|| ||y|| ||z||, is the generalized
/// Holder inequality, so it holds by construction rather than by test.
///
/// Spaces and state vectors are immutable; every operation here is a
/// pure function and safe to call concurrently.
class TriProductSpace {
 public:
  /// Weighted pointwise space. Rejects empty, non-positive or
  /// non-finite weights (InvalidSpaceError).
  static TriProductSpace pointwise(std::vector<double> weights,
                                   std::string label = "");

  /// Unit weights on n coordinates.
  static TriProductSpace unit(std::size_t dimension, std::string label = "");

  /// Midpoint rule on [0,1] with n nodes: weights 1/n, nodes (i+1/2)/n.
  static TriProductSpace midpoint_quadrature(std::size_t nodes,
                                             std::string label = "");

  /// Trapezoid rule on [0,1] with n >= 2 nodes (all weights positive).
  static TriProductSpace trapezoid_quadrature(std::size_t nodes,
                                              std::string label = "");

  /// Skips weight validation. Exists so axiom-falsification tests can
  /// build a corrupted form; never use for real spaces.
  static TriProductSpace unchecked(std::vector<double> weights,
                                   std::string label = "");

  std::size_t dimension() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& label() const { return label_; }

  /// Wraps coordinates into a StateVector, caching <x,x,x>.
  StateVector state(std::vector<double> coords) const;

  /// e_i (0-based).
  StateVector basis_state(std::size_t i) const;

  /// The 3-product. Each term is accumulated in ascending index order
  /// and the three coordinate factors are multiplied in a canonical
  /// value order, so any permutation of the arguments returns the
  /// bit-identical double.
  double eval3(std::span<const double> x, std::span<const double> y,
               std::span<const double> z) const;
  double eval3(const StateVector& x, const StateVector& y,
               const StateVector& z) const;

  /// (sum_i w_i |x_i|^3)^(1/3); zero iff x = 0 for valid spaces.
  double norm(std::span<const double> x) const;
  double norm(const StateVector& x) const;

  /// x / cbrt(<x,x,x>) using the signed real cube root, so the result
  /// has <x,x,x> = 1 even when the cube sum is negative. Throws
  /// NearNullCubeError when |<x,x,x>| < epsilon.
  StateVector cube_normalize(const StateVector& x,
                             double epsilon = kNullCubeEpsilon) const;
  StateVector cube_normalize(std::span<const double> coords,
                             double epsilon = kNullCubeEpsilon) const;

 private:
  TriProductSpace(std::vector<double> weights, std::string label)
      : weights_(std::move(weights)), label_(std::move(label)) {}

  void require_dimension(std::size_t n, const char* what) const;

  std::vector<double> weights_;
  std::string label_;
};

/// Nodes (i+1/2)/n of the midpoint rule, for sampling functions on [0,1].
std::vector<double> midpoint_nodes(std::size_t n);

/// Samples `sample_budget` seeded random triples and checks the four
/// axioms: (i) permutation symmetry (bit-exact), (ii) homogeneity,
/// (iii) additivity, (iv) Holder. `tol` bounds the scaled deviations of
/// (ii) and (iii); axiom (iv) is judged at the kHolderRelTol scale.
/// A zero budget yields a vacuous pass.
AxiomReport check_axioms(const TriProductSpace& space,
                         std::size_t sample_budget, std::uint64_t seed,
                         double tol = 1e-9);

}  // namespace triup
