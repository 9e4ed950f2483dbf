#pragma once

#include <span>
#include <stdexcept>

namespace moc {

/// Convex combination weights returned by the two-vector min-norm solver.
/// Invariant: c1 + c2 = 1, both in [0, 1].
struct MinNormWeights {
  double c1 = 1.0;
  double c2 = 0.0;
};

/// Closed-form solution of min_{c in [0,1]} ||c*u1 + (1-c)*u2||^2.
///
/// Branches: c = 1 when u1.u2 >= u1.u1 (the segment minimum sits at u1),
/// c = 0 when u1.u2 >= u2.u2, and otherwise the interior stationary point
/// c = ((u2 - u1).u2) / ||u1 - u2||^2. Returns (c, 1-c).
inline MinNormWeights min_norm_2(std::span<const double> u1,
                                 std::span<const double> u2) {
  if (u1.size() != u2.size()) {
    throw std::invalid_argument("min_norm_2: length mismatch");
  }
  double d11 = 0.0, d12 = 0.0, d22 = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    d11 += u1[i] * u1[i];
    d12 += u1[i] * u2[i];
    d22 += u2[i] * u2[i];
  }
  double c;
  if (d12 >= d11) {
    c = 1.0;
  } else if (d12 >= d22) {
    c = 0.0;
  } else {
    // Denominator is positive here: both branch conditions failed, so
    // d11 - d12 > 0 and d22 - d12 > 0.
    c = (d22 - d12) / (d11 - 2.0 * d12 + d22);
  }
  return {c, 1.0 - c};
}

}  // namespace moc
