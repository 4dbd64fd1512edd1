#pragma once

namespace triup {

/// Absolute/relative tolerance pair used throughout the library.
///
/// Comparisons of computed quantities are judged against
/// `absolute + relative * scale`, where `scale` is the sum of the
/// absolute values entering the computation. The defaults are sized
/// for double-precision contractions of at most a few thousand terms.
struct Tolerances {
  double absolute = 1e-12;
  double relative = 1e-9;

  double bound(double scale) const { return absolute + relative * scale; }
};

/// Vectors with |<x,x,x>| below this cannot be cube-normalized and are
/// rejected (generators resample instead).
inline constexpr double kNullCubeEpsilon = 1e-6;

/// Proof-identity and order-invariance checks run at this relative
/// tolerance (scaled by the magnitudes entering the computation).
inline constexpr double kIdentityRelTol = 1e-10;

/// Sampled Holder margins may be negative by at most this fraction of
/// the norm-product scale.
inline constexpr double kHolderRelTol = 1e-12;

}  // namespace triup
