#pragma once

#include <vector>

#include "olk/step_function.hpp"

namespace olk {

// Half-open level interval (a, b] with the averaged ratio F(a,b)/W(a,b).
struct LevelInterval {
    real a, b, ratio;
};

// Level decomposition of f with respect to the weight w:
//   level = f^0, equal to ratio * w on each reported interval and to f
//   (exactly) elsewhere;
//   inverse_weight = w off the intervals and f * W(a,b)/F(a,b) on them
//   (w itself on intervals carrying no mass).
// Reported intervals are the maximal level intervals spanning more than
// one grid cell and carrying positive mass; on single-cell blocks
// averaging is the identity and on zero-mass blocks nothing moves, so
// both are omitted.
struct LevelDecomposition {
    StepFunction source;
    StepFunction weight;
    std::vector<LevelInterval> intervals;
    StepFunction level;
    StepFunction inverse_weight;
};

// Maximal level intervals by a stack-based merge of grid cells:
// adjacent blocks merge while their mass/weight ratios fail to strictly
// decrease (ties extend the interval).  Comparisons cross-multiply, so
// they are exact whenever the cell sums are.
LevelDecomposition halperin_level(const StepFunction& f, const Weight& w);

// Slope of the least concave majorant of t -> int_0^t f w in the
// W-parametrization (upper convex hull of the nodes (W(t_i), FW(t_i))).
StepFunction sinnamon_level(const StepFunction& f, const Weight& w);

// Deformed weight for non-increasing fstar; throws std::domain_error on
// increasing input.
StepFunction inverse_level_weight(const StepFunction& fstar, const Weight& w);

struct LevelCrosscheck {
    real max_deviation;
    bool ok;
};

// Verifies halperin_level(f, w).level / w == sinnamon_level(f / w, w)
// cellwise; the two routes share no code beyond step arithmetic.
LevelCrosscheck crosscheck_level(const StepFunction& f, const Weight& w,
                                 real tol = 1e-10);

} // namespace olk
