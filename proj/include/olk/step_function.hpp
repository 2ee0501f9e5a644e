#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "olk/extended.hpp"

namespace olk {

// Nonnegative step function on [0, T).  Representation:
//   breaks: 0 = b_0 < b_1 < ... < b_n = T
//   values: v_1 ... v_n, f(t) = v_i on [b_{i-1}, b_i)
// Canonical form merges adjacent cells with equal values, so the
// representation of a given function is unique.  All pairwise
// operations go through the merged break grid and stay exact.
class StepFunction {
  public:
    StepFunction() = default;
    StepFunction(std::vector<real> breaks, std::vector<real> values);

    static StepFunction zero(real T);
    static StepFunction constant(real c, real T);
    // c * chi_{[a,b)} inside domain [0, T); T defaults to b.
    static StepFunction indicator(real c, real a, real b, real T = -1.0);

    const std::vector<real>& breaks() const { return breaks_; }
    const std::vector<real>& values() const { return values_; }
    std::size_t cells() const { return values_.size(); }
    real domain_end() const { return breaks_.back(); }

    real value_at(real t) const; // 0 outside [0, T)
    bool is_zero() const;
    bool is_nonincreasing() const;
    real max_value() const;

    // Pointwise combinations on the merged grid, zero-extended to the
    // larger domain.
    StepFunction scaled(real c) const;
    StepFunction plus(const StepFunction& g) const;
    StepFunction times(const StepFunction& g) const;
    // Pointwise f/g; cells where g = 0 require f = 0 there (0/0 := 0).
    StepFunction divided_by(const StepFunction& g) const;
    // Same function on [0, T + offset) with a zero cell in front.
    StepFunction translated(real offset) const;
    // Zero-extend the domain to T (no-op when T <= domain_end()).
    StepFunction extended_to(real T) const;

    bool operator==(const StepFunction& g) const {
        return breaks_ == g.breaks_ && values_ == g.values_;
    }

  private:
    std::vector<real> breaks_{0.0, 1.0};
    std::vector<real> values_{0.0};
    void canonicalize();
    void validate() const;
};

// Merged break grid of two functions (union of breakpoints, zero-extended
// to the common domain max).
std::vector<real> merged_grid(const StepFunction& f, const StepFunction& g);

// Exact integral of f over [a, b] (clamped to the domain).
real integrate(const StepFunction& f, real a, real b);
inline real integrate(const StepFunction& f) {
    return integrate(f, 0.0, f.domain_end());
}

// Distribution function d_f(lambda) = |{t : f(t) > lambda}|, lambda >= 0.
real distribution(const StepFunction& f, real lambda);

// Decreasing rearrangement f*: cells sorted by value, descending.
// Equimeasurable with f by construction (a permutation of cells).
StepFunction rearrange(const StepFunction& f);

// True iff f is submajorized by g: int_0^t f* <= int_0^t g* for all t.
// Both prefix integrals are piecewise linear, so checking the merged
// breakpoints is exact.
bool submajorizes(const StepFunction& g, const StepFunction& f);

struct HardyPairingResult {
    real lhs; // int f1 g
    real rhs; // int f2 g
    bool holds;
};

// Hardy's lemma check: requires int_0^t f1 <= int_0^t f2 for all t and
// g non-increasing; then int f1 g <= int f2 g.  Violated preconditions
// throw std::domain_error naming the failing t or cell.
HardyPairingResult hardy_pairing_check(const StepFunction& f1,
                                       const StepFunction& f2,
                                       const StepFunction& g);

// Positive non-increasing step weight with exact cumulative W.
class Weight {
  public:
    Weight() : Weight(StepFunction::constant(1.0, 1.0)) {}
    explicit Weight(StepFunction w);
    Weight(std::vector<real> breaks, std::vector<real> values)
        : Weight(StepFunction(std::move(breaks), std::move(values))) {}

    const StepFunction& fn() const { return w_; }
    real domain_end() const { return w_.domain_end(); }

    real W(real t) const;               // int_0^t w, exact per cell
    real W_between(real a, real b) const { return W(b) - W(a); }
    real total() const { return W(domain_end()); }
    // Inverse of the cumulative: least t with W(t) = y (W strictly
    // increasing since w > 0), exact piecewise-linear inversion.
    real W_inverse(real y) const;

  private:
    StepFunction w_;
    std::vector<real> cumW_; // cumW_[i] = W(breaks[i])
};

} // namespace olk
