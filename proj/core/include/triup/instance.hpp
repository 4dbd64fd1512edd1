#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triup/linear_operator.hpp"
#include "triup/sharpness.hpp"
#include "triup/tolerances.hpp"
#include "triup/tri_product_space.hpp"

namespace triup {

/// FNV-1a over bytes; used for instance digests in reports.
std::uint64_t fnv1a64(std::string_view text);

struct SpaceSpec {
  std::size_t dimension = 0;
  std::optional<std::vector<double>> weights;  // nullopt = "unit"
  std::string label;
};

struct OperatorSpec {
  enum class Kind { kDiagonal, kDense, kRandomDiagonal };
  Kind kind = Kind::kDiagonal;
  std::vector<double> diagonal;      // kDiagonal
  std::vector<double> dense;         // kDense, row-major n*n
  double random_low = 0.0;           // kRandomDiagonal
  double random_high = 0.0;
};

struct StateSpec {
  bool random = false;
  std::vector<double> coords;  // used when !random
};

struct OptimizeSpec {
  std::string mode = "state";                  // "state" | "joint"
  std::optional<std::array<double, 2>> bounds;  // required for joint
  OptimizerConfig config;  // seed is filled from the file's seed
};

/// One UTF-8 JSON instance file: which space, operators, state and
/// tolerances a run uses. Parsing is total: unknown keys, malformed
/// values and cross-field mismatches all fail with a message anchored
/// to the offending line or field.
struct InstanceFile {
  SpaceSpec space;
  std::vector<OperatorSpec> operators;  // empty, or 2 (classical) or 3
  std::optional<StateSpec> state;
  Tolerances tolerances;
  std::optional<std::int64_t> seed;
  std::optional<OptimizeSpec> optimize;

  static InstanceFile parse_file(const std::string& path);
  static InstanceFile parse_string(const std::string& text,
                                   const std::string& origin = "<inline>");

  TriProductSpace make_space() const;

  /// Resolves operator `index`; random_diagonal draws from the file
  /// seed's derived stream (offset 1000 + index).
  LinearOperator make_operator(std::size_t index,
                               const TriProductSpace& space) const;

  /// The file's state, cube-normalized. Random states draw from the
  /// seed's derived stream (offset 2000), resampling null-cube draws.
  StateVector make_cube_state(const TriProductSpace& space) const;

  /// The file's state normalized in the Euclidean norm (classical runs).
  std::vector<double> make_euclidean_state(std::size_t dimension) const;

  /// Seed, or ParseError explaining which feature needed one.
  std::uint64_t require_seed(const char* needed_for) const;

  /// Deterministic re-serialization of the parsed content.
  std::string canonical_json() const;

  /// "fnv1a:<hex>" over canonical_json().
  std::string digest() const;
};

}  // namespace triup
