#include "olk/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace olk {

namespace {

void check_positive_finite(real x, const char* what) {
    if (!(std::isfinite(x) && x > 0.0))
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}

} // namespace

ExtOrliczFunction ExtOrliczFunction::power(real p, real c) {
    if (!(std::isfinite(p) && p >= 1.0))
        throw std::invalid_argument("power: need p >= 1");
    check_positive_finite(c, "power: c");
    ExtOrliczFunction f;
    f.kind_ = Kind::power;
    f.p_ = p;
    f.c_ = c;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::exp_n() {
    ExtOrliczFunction f;
    f.kind_ = Kind::exp_n;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::exp_plain() {
    ExtOrliczFunction f;
    f.kind_ = Kind::exp_plain;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::exp_n_conj() {
    ExtOrliczFunction f;
    f.kind_ = Kind::exp_n_conj;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::exp_plain_conj() {
    ExtOrliczFunction f;
    f.kind_ = Kind::exp_plain_conj;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::zero_jump(real v_inf) {
    check_positive_finite(v_inf, "zero_jump: v_inf");
    ExtOrliczFunction f;
    f.kind_ = Kind::zero_jump;
    f.v_inf_ = v_inf;
    return f;
}

ExtOrliczFunction ExtOrliczFunction::piecewise(std::vector<real> breaks,
                                               std::vector<real> slopes,
                                               real v_inf) {
    if (breaks.empty() || breaks.size() != slopes.size())
        throw std::invalid_argument("piecewise: need one slope per break");
    if (breaks.front() != 0.0)
        throw std::invalid_argument("piecewise: breaks must start at 0");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] < breaks[i + 1]))
            throw std::invalid_argument("piecewise: breaks must be strictly increasing");
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (!(std::isfinite(slopes[i]) && slopes[i] >= 0.0))
            throw std::invalid_argument("piecewise: slopes must be finite and >= 0");
        if (i > 0 && slopes[i] < slopes[i - 1])
            throw std::invalid_argument("piecewise: slopes must be non-decreasing");
    }
    if (!(v_inf > breaks.back()) && !(v_inf == kInf))
        throw std::invalid_argument("piecewise: v_inf must exceed the last break");
    // Merge segments with equal slopes so the representation is canonical.
    std::vector<real> nb, ns;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        if (!ns.empty() && ns.back() == slopes[i]) continue;
        nb.push_back(breaks[i]);
        ns.push_back(slopes[i]);
    }
    if (ns.size() == 1 && v_inf == kInf) {
        if (ns[0] == 0.0)
            throw std::invalid_argument("piecewise: identically zero");
        return power(1.0, ns[0]);
    }
    if (ns.size() == 1 && ns[0] == 0.0) return zero_jump(v_inf);
    ExtOrliczFunction f;
    f.kind_ = Kind::piecewise;
    f.breaks_ = std::move(nb);
    f.slopes_ = std::move(ns);
    f.v_inf_ = v_inf;
    f.build_knot_vals();
    return f;
}

void ExtOrliczFunction::build_knot_vals() {
    knot_vals_.assign(breaks_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        knot_vals_[i + 1] = knot_vals_[i] + slopes_[i] * (breaks_[i + 1] - breaks_[i]);
}

real ExtOrliczFunction::eval(real u) const {
    if (!(u >= 0.0)) throw std::domain_error("eval: argument must be >= 0");
    if (u > v_inf_) return kInf;
    if (std::isinf(u)) return kInf; // finite kinds diverge; avoids inf - inf
    switch (kind_) {
        case Kind::power: return c_ * std::pow(u, p_);
        case Kind::exp_n: return std::expm1(u) - u;
        case Kind::exp_plain: return std::expm1(u);
        case Kind::exp_n_conj: return (1.0 + u) * std::log1p(u) - u;
        case Kind::exp_plain_conj:
            return u <= 1.0 ? 0.0 : u * std::log(u) - u + 1.0;
        case Kind::zero_jump: return 0.0;
        case Kind::piecewise: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
            std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
            return knot_vals_[i] + slopes_[i] * (u - breaks_[i]);
        }
    }
    return 0.0;
}

real ExtOrliczFunction::right_derivative(real u) const {
    if (!(u >= 0.0)) throw std::domain_error("right_derivative: argument must be >= 0");
    if (u >= v_inf_) return kInf;
    switch (kind_) {
        case Kind::power:
            if (p_ == 1.0) return c_;
            return c_ * p_ * std::pow(u, p_ - 1.0);
        case Kind::exp_n: return std::expm1(u);
        case Kind::exp_plain: return std::exp(u);
        case Kind::exp_n_conj: return std::log1p(u);
        case Kind::exp_plain_conj: return u < 1.0 ? 0.0 : std::log(u);
        case Kind::zero_jump: return 0.0;
        case Kind::piecewise: {
            auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
            std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
            return slopes_[i];
        }
    }
    return 0.0;
}

real ExtOrliczFunction::inverse(real y) const {
    if (!(y >= 0.0)) throw std::domain_error("inverse: argument must be >= 0");
    if (y == 0.0) return 0.0;
    switch (kind_) {
        case Kind::power: return std::pow(y / c_, 1.0 / p_);
        case Kind::exp_plain: return std::log1p(y);
        case Kind::zero_jump: return v_inf_;
        case Kind::piecewise: {
            for (std::size_t i = 0; i < slopes_.size(); ++i) {
                real seg_end = (i + 1 < breaks_.size()) ? breaks_[i + 1] : v_inf_;
                real end_val = (i + 1 < knot_vals_.size())
                                     ? knot_vals_[i + 1]
                                     : (v_inf_ == kInf
                                            ? kInf
                                            : knot_vals_[i] + slopes_[i] * (v_inf_ - breaks_[i]));
                if (y <= end_val && slopes_[i] > 0.0) {
                    real u = breaks_[i] + (y - knot_vals_[i]) / slopes_[i];
                    if (u >= breaks_[i] && u <= seg_end) return std::max(u, breaks_[i]);
                }
            }
            return v_inf_; // only the +inf tail reaches y
        }
        default: break;
    }
    // Smooth strictly increasing kinds: bracketed bisection to 1e-12.
    real hi = 1.0;
    while (eval(hi) < y) {
        hi *= 2.0;
        if (hi > 1e300) return kInf;
    }
    real lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        real mid = 0.5 * (lo + hi);
        if (eval(mid) >= y) hi = mid; else lo = mid;
        if (hi - lo <= 1e-12 * std::max<real>(1.0, hi)) break;
    }
    return hi;
}

real ExtOrliczFunction::slope_at_infinity() const {
    switch (kind_) {
        case Kind::power: return p_ == 1.0 ? c_ : kInf;
        case Kind::exp_n:
        case Kind::exp_plain:
        case Kind::exp_n_conj:
        case Kind::exp_plain_conj: return kInf;
        case Kind::zero_jump: return kInf;
        case Kind::piecewise: return v_inf_ == kInf ? slopes_.back() : kInf;
    }
    return kInf;
}

bool ExtOrliczFunction::vanishes_near_zero() const {
    switch (kind_) {
        case Kind::exp_plain_conj:
        case Kind::zero_jump: return true;
        case Kind::piecewise: return slopes_.front() == 0.0;
        default: return false;
    }
}

ExtOrliczFunction ExtOrliczFunction::conjugate() const {
    switch (kind_) {
        case Kind::power: {
            if (p_ == 1.0) return zero_jump(c_);
            real q = p_ / (p_ - 1.0);
            real cc = (p_ - 1.0) * std::pow(p_, -q) * std::pow(c_, 1.0 - q);
            return power(q, cc);
        }
        case Kind::exp_n: return exp_n_conj();
        case Kind::exp_n_conj: return exp_n();
        case Kind::exp_plain: return exp_plain_conj();
        case Kind::exp_plain_conj: return exp_plain();
        case Kind::zero_jump: return power(1.0, v_inf_);
        case Kind::piecewise: {
            // Slopes and breakpoints swap roles; a finite v_inf on one
            // side becomes the unbounded tail slope on the other.
            std::vector<real> nb{0.0}, ns;
            if (slopes_.front() > 0.0) {
                ns.push_back(0.0);
                nb.push_back(slopes_.front());
            }
            for (std::size_t i = 1; i < breaks_.size(); ++i) {
                ns.push_back(breaks_[i]); // slope of the conjugate on [slopes_[i-1], slopes_[i])
                nb.push_back(slopes_[i]);
            }
            // nb now ends with the top slope; that last entry either
            // starts the unbounded tail (finite v_inf_) or marks where
            // the conjugate jumps to +inf.
            real nv = kInf;
            if (v_inf_ != kInf) {
                ns.push_back(v_inf_); // finite tail slope, conjugate finite everywhere
            } else {
                nv = nb.back(); // conjugate jumps to +inf past the top slope
                nb.pop_back();
            }
            return piecewise(std::move(nb), std::move(ns), nv);
        }
    }
    throw std::logic_error("conjugate: unhandled kind");
}

std::optional<bool> ExtOrliczFunction::n_at_zero() const {
    switch (kind_) {
        case Kind::power: return p_ > 1.0;
        case Kind::exp_n:
        case Kind::exp_n_conj: return true;
        case Kind::exp_plain: return false;
        case Kind::exp_plain_conj: return true;
        case Kind::zero_jump: return true;
        case Kind::piecewise: return slopes_.front() == 0.0;
    }
    return std::nullopt;
}

std::optional<bool> ExtOrliczFunction::n_at_infinity() const {
    switch (kind_) {
        case Kind::power: return p_ > 1.0;
        case Kind::exp_n:
        case Kind::exp_n_conj:
        case Kind::exp_plain:
        case Kind::exp_plain_conj: return true;
        case Kind::zero_jump: return true;
        case Kind::piecewise: return v_inf_ != kInf;
    }
    return std::nullopt;
}

std::string ExtOrliczFunction::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::power:
            if (c_ == 1.0) os << "power(p=" << p_ << ")";
            else os << "scaled_power(c=" << c_ << ",p=" << p_ << ")";
            break;
        case Kind::exp_n: os << "exp_n"; break;
        case Kind::exp_plain: os << "exp_plain"; break;
        case Kind::exp_n_conj: os << "exp_n_conj"; break;
        case Kind::exp_plain_conj: os << "exp_plain_conj"; break;
        case Kind::zero_jump: os << "zero_jump(v_inf=" << v_inf_ << ")"; break;
        case Kind::piecewise:
            os << "piecewise(" << breaks_.size() << " segments";
            if (v_inf_ != kInf) os << ", v_inf=" << v_inf_;
            os << ")";
            break;
    }
    return os.str();
}

OrliczFunction::OrliczFunction(ExtOrliczFunction f) : f_(std::move(f)) {
    if (!f_.finite_everywhere())
        throw std::invalid_argument("orlicz function: must be finite everywhere");
    if (f_.vanishes_near_zero())
        throw std::invalid_argument("orlicz function: must be positive for u > 0");
}

OrliczFunction OrliczFunction::power(real p, real c) {
    return OrliczFunction(ExtOrliczFunction::power(p, c));
}
OrliczFunction OrliczFunction::exp_n() {
    return OrliczFunction(ExtOrliczFunction::exp_n());
}
OrliczFunction OrliczFunction::exp_plain() {
    return OrliczFunction(ExtOrliczFunction::exp_plain());
}
OrliczFunction OrliczFunction::exp_n_conj() {
    return OrliczFunction(ExtOrliczFunction::exp_n_conj());
}
OrliczFunction OrliczFunction::piecewise(std::vector<real> breaks,
                                         std::vector<real> slopes) {
    return OrliczFunction(ExtOrliczFunction::piecewise(std::move(breaks), std::move(slopes)));
}

bool OrliczFunction::is_n_function() const {
    auto z = n_at_zero(), i = n_at_infinity();
    return z.has_value() && i.has_value() && *z && *i;
}

real young_gap(const OrliczFunction& phi, real u, real v) {
    real a = phi.eval(u);
    real b = phi.complementary().eval(v);
    if (std::isinf(b)) return kInf;
    return a + b - u * v;
}

Delta2Report delta2_probe(const OrliczFunction& phi, real K, real lo,
                          real hi, int samples, real l) {
    if (!(l > 1.0)) throw std::invalid_argument("delta2_probe: need l > 1");
    if (!(K > l)) throw std::invalid_argument("delta2_probe: need K > l");
    if (!(0.0 < lo && lo < hi)) throw std::invalid_argument("delta2_probe: bad range");
    if (samples < 2) throw std::invalid_argument("delta2_probe: need >= 2 samples");
    Delta2Report rep{true, std::nullopt, 0.0, {}};
    real ratio = hi / lo;
    for (int j = 0; j < samples; ++j) {
        real u = lo * std::pow(ratio, real(j) / real(samples - 1));
        rep.grid.push_back(u);
        if (rep.pass) {
            real lhs = phi.eval(l * u), rhs = K * phi.eval(u);
            if (lhs > rhs) {
                rep.pass = false;
                rep.witness = u;
                rep.ratio_at_witness = phi.eval(l * u) / phi.eval(u);
            }
        }
    }
    return rep;
}

OrderReport order_leq(const OrliczFunction& phi1, const OrliczFunction& phi2,
                      real b, real u0, real lo, real hi, int samples,
                      Regime regime) {
    if (!(b > 0.0)) throw std::invalid_argument("order_leq: need b > 0");
    if (samples < 2) throw std::invalid_argument("order_leq: need >= 2 samples");
    real a = lo, z = hi;
    if (regime == Regime::zero) z = std::min(hi, u0);
    if (regime == Regime::infinity) a = std::max(lo, u0);
    if (!(0.0 < a && a < z)) throw std::invalid_argument("order_leq: empty range");
    for (int j = 0; j < samples; ++j) {
        real u = a * std::pow(z / a, real(j) / real(samples - 1));
        real lhs = phi1.eval(u), rhs = phi2.eval(b * u);
        if (lhs > rhs + 1e-12 * std::max<real>(1.0, rhs)) return {false, u};
    }
    return {true, std::nullopt};
}

NFunctionProbe n_function_probe(const OrliczFunction& phi) {
    NFunctionProbe pr;
    for (int k = -12; k <= 12; ++k) {
        real u = std::pow(10.0, k);
        pr.u.push_back(u);
        pr.ratio.push_back(phi.eval(u) / u);
    }
    pr.analytic_zero = phi.n_at_zero();
    pr.analytic_infinity = phi.n_at_infinity();
    real mid = pr.ratio[pr.ratio.size() / 2];
    pr.empirical_zero = pr.ratio.front() < 1e-3L * std::max<real>(mid, 1e-300);
    pr.empirical_infinity = pr.ratio.back() > 1e3 * mid || std::isinf(pr.ratio.back());
    return pr;
}

real numeric_conjugate(const OrliczFunction& phi, real v) {
    if (!(v >= 0.0)) throw std::domain_error("numeric_conjugate: v must be >= 0");
    if (v == 0.0) return 0.0;
    auto g = [&](real u) { return u * v - phi.eval(u); };
    const real lo = 1e-8, hi = 1e8;
    const int per_decade = 512;
    const int decades = 16;
    const int n = per_decade * decades;
    real best_u = 0.0, best = 0.0; // u = 0 gives 0
    for (int j = 0; j <= n; ++j) {
        real u = lo * std::pow(10.0, real(j) / per_decade);
        real s = g(u);
        if (s > best) { best = s; best_u = u; }
    }
    real a = best_u == 0.0 ? 0.0 : best_u / std::pow(10.0L, 1.0L / per_decade);
    real b = std::min(hi, std::max(best_u, lo) * std::pow(10.0L, 1.0L / per_decade));
    const real gr = 0.5 * (std::sqrt(5.0) - 1.0);
    real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    real f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = g(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = g(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

} // namespace olk
