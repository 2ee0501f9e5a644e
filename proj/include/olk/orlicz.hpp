#pragma once

#include <optional>
#include <string>
#include <vector>

#include "olk/extended.hpp"

namespace olk {

// Convex integrand on [0, inf] with values in [0, +inf].  Finite kinds
// qualify as Orlicz functions; zero_jump and the conjugate kinds arise as
// complementary functions (e.g. the conjugate of u is 0 on [0,1], +inf
// beyond).  Conjugation is closed-form and involutive for every kind.
class ExtOrliczFunction {
  public:
    enum class Kind {
        power,          // c * u^p, p >= 1
        exp_n,          // e^u - 1 - u
        exp_plain,      // e^u - 1
        exp_n_conj,     // (1+v)log(1+v) - v
        exp_plain_conj, // 0 on [0,1], v log v - v + 1 beyond
        piecewise,      // convex piecewise linear, optional finite v_inf
        zero_jump       // 0 on [0, v_inf], +inf beyond
    };

    static ExtOrliczFunction power(real p, real c = 1.0);
    static ExtOrliczFunction exp_n();
    static ExtOrliczFunction exp_plain();
    static ExtOrliczFunction exp_n_conj();
    static ExtOrliczFunction exp_plain_conj();
    // Segment slopes over [breaks[i], breaks[i+1]) plus one tail slope
    // past breaks.back(); breaks[0] = 0.  Finite v_inf caps the domain:
    // the function is +inf past v_inf and finite at it.
    static ExtOrliczFunction piecewise(std::vector<real> breaks,
                                       std::vector<real> slopes,
                                       real v_inf = kInf);
    static ExtOrliczFunction zero_jump(real v_inf);

    real eval(real u) const; // +inf past v_inf
    // Right derivative; +inf at and past a finite v_inf.
    real right_derivative(real u) const;
    // inf{u : eval(u) >= y}, y >= 0 (treats +inf as >= y).
    real inverse(real y) const;
    // Threshold of finiteness: eval finite on [0, v_inf], +inf beyond.
    real v_inf() const { return v_inf_; }
    bool finite_everywhere() const { return v_inf_ == kInf; }
    // lim_{u->inf} eval(u)/u (the v_inf of the conjugate).
    real slope_at_infinity() const;
    bool vanishes_near_zero() const; // eval = 0 on a right neighborhood of 0

    ExtOrliczFunction conjugate() const;

    // Analytic N-function limit flags where known.
    std::optional<bool> n_at_zero() const;
    std::optional<bool> n_at_infinity() const;

    Kind kind() const { return kind_; }
    real param_p() const { return p_; }
    real param_c() const { return c_; }
    const std::vector<real>& pw_breaks() const { return breaks_; }
    const std::vector<real>& pw_slopes() const { return slopes_; }

    std::string describe() const;

  private:
    ExtOrliczFunction() = default;
    Kind kind_ = Kind::power;
    real p_ = 1.0, c_ = 1.0;
    real v_inf_ = kInf;
    std::vector<real> breaks_, slopes_, knot_vals_;
    void build_knot_vals();
};

// Finite Orlicz function: convex, vanishing only at 0, finite everywhere.
class OrliczFunction {
  public:
    static OrliczFunction power(real p, real c = 1.0);
    static OrliczFunction exp_n();
    static OrliczFunction exp_plain();
    static OrliczFunction exp_n_conj();
    static OrliczFunction piecewise(std::vector<real> breaks,
                                    std::vector<real> slopes);
    // Validating adoption of a finite, non-degenerate carrier.
    explicit OrliczFunction(ExtOrliczFunction f);
    OrliczFunction() : OrliczFunction(power(2.0)) {}

    real eval(real u) const { return f_.eval(u); }
    real operator()(real u) const { return f_.eval(u); }
    real right_derivative(real u) const { return f_.right_derivative(u); }
    real inverse(real y) const { return f_.inverse(y); }
    ExtOrliczFunction complementary() const { return f_.conjugate(); }
    const ExtOrliczFunction& ext() const { return f_; }

    std::optional<bool> n_at_zero() const { return f_.n_at_zero(); }
    std::optional<bool> n_at_infinity() const { return f_.n_at_infinity(); }
    // True only when both analytic flags are known true.
    bool is_n_function() const;
    std::string describe() const { return f_.describe(); }

  private:
    ExtOrliczFunction f_;
};

real young_gap(const OrliczFunction& phi, real u, real v);

struct Delta2Report {
    bool pass;                     // no witness found on the scan grid
    std::optional<real> witness; // first u with phi(l u) > K phi(u)
    real ratio_at_witness = 0.0;
    std::vector<real> grid;
};

// Scan a log-spaced grid of [lo, hi] for a growth-condition violation
// phi(l u) > K phi(u).  K > l required (trivially violated otherwise).
Delta2Report delta2_probe(const OrliczFunction& phi, real K, real lo,
                          real hi, int samples, real l = 2.0);

struct OrderReport {
    bool pass;
    std::optional<real> witness; // u with phi1(u) > phi2(b u)
};

enum class Regime { zero, infinity, global };

// Check phi1(u) <= phi2(b u) on a log-spaced grid; regime restricts the
// grid to [lo, u0] (zero) or [u0, hi] (infinity).
OrderReport order_leq(const OrliczFunction& phi1, const OrliczFunction& phi2,
                      real b, real u0, real lo, real hi, int samples,
                      Regime regime = Regime::global);

struct NFunctionProbe {
    std::vector<real> u;      // ladder 10^-12 .. 10^12
    std::vector<real> ratio;  // phi(u)/u
    std::optional<bool> analytic_zero, analytic_infinity;
    bool empirical_zero;        // ratio decreasing toward 0 end
    bool empirical_infinity;    // ratio increasing, large at top end
};

NFunctionProbe n_function_probe(const OrliczFunction& phi);

// Numeric Legendre transform sup_u (u v - phi(u)) on a log grid of
// 512 points per decade over u in [1e-8, 1e8], refined by 40 rounds of
// golden-section search around the best point.  Independent oracle for
// the closed-form conjugates.
real numeric_conjugate(const OrliczFunction& phi, real v);

} // namespace olk
