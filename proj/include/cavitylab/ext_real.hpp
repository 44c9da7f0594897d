#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavitylab/errors.hpp"

namespace cavitylab {

// R ∪ {-inf}. -inf encodes a violated hard constraint; +inf never appears
// because node potentials are finite and the only subtraction whose second
// operand can be -inf is rejected below.
struct ExtReal {
  double v = 0.0;

  constexpr ExtReal() = default;
  constexpr ExtReal(double x) : v(x) {}  // NOLINT: implicit by design

  static constexpr ExtReal neg_inf() {
    return ExtReal{-std::numeric_limits<double>::infinity()};
  }
  bool is_neg_inf() const { return std::isinf(v) && v < 0; }
  bool is_finite() const { return !is_neg_inf(); }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v == b.v; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v != b.v; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v < b.v; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v <= b.v; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v > b.v; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v >= b.v; }
};

inline ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal{a.v + b.v}; }
inline ExtReal& operator+=(ExtReal& a, ExtReal b) {
  a.v += b.v;
  return a;
}

// a - b; b = -inf has no consistent value and must never be silently produced.
inline ExtReal operator-(ExtReal a, ExtReal b) {
  if (b.is_neg_inf()) {
    throw ExtRealError("subtraction with a -inf subtrahend is undefined");
  }
  return ExtReal{a.v - b.v};
}

inline ExtReal max(ExtReal a, ExtReal b) { return a.v >= b.v ? a : b; }

}  // namespace cavitylab
