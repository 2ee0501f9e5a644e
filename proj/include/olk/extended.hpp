#pragma once

#include <cmath>
#include <limits>

namespace olk {

// Core scalar.  80-bit extended precision: the pathological families in
// pathology.cpp need mass ladders far below the double denormal range
// (~1e-500 at depth 40), which x86-64 long double represents comfortably.
// Doubles embed exactly, so dyadic-exactness reasoning is unaffected.
using real = long double;

inline constexpr real kInf = std::numeric_limits<real>::infinity();

// Extended-real arithmetic on [0, +inf] with the measure-theoretic
// convention 0 * inf = 0.  Sums saturate at +inf.
inline real ext_mul(real a, real b) {
    if (a == 0.0L || b == 0.0L) return 0.0L;
    return a * b;
}

inline real ext_add(real a, real b) {
    if (std::isinf(a) || std::isinf(b)) return kInf;
    return a + b;
}

inline bool is_finite(real a) { return std::isfinite(a); }

} // namespace olk
