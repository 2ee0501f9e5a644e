#include "olk/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <stdexcept>

#include "olk/duality.hpp"
#include "olk/io.hpp"
#include "olk/level.hpp"
#include "olk/modular.hpp"
#include "olk/orlicz.hpp"
#include "olk/pathology.hpp"
#include "olk/random_gen.hpp"

namespace olk {

int SuiteReport::total_failures() const {
    int n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
}

namespace {

// residual > tol counts as a failure (NaN compares false and fails);
// the worst residual is kept either way.
void note(CheckResult& r, real residual, real tol) {
    if (!(residual <= tol)) ++r.failures;
    if (residual > r.worst_residual) r.worst_residual = residual;
}

void flag(CheckResult& r, bool ok) { note(r, ok ? 0.0L : 1.0L, 0.5L); }

real rel(real got, real want) {
    return std::abs(got - want) / (1.0L + std::abs(want));
}

const OrliczFunction& nfun_pool(std::uint64_t i) {
    static const OrliczFunction pool[] = {
        OrliczFunction::power(1.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::power(3.0L),
        OrliczFunction::exp_n(),
    };
    return pool[i % 4];
}

const OrliczFunction& finite_pool(std::uint64_t i) {
    static const OrliczFunction pool[] = {
        OrliczFunction::power(1.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::power(3.0L),
        OrliczFunction::exp_n(),
        OrliczFunction::exp_plain(),
    };
    return pool[i % 5];
}

real dyadic_T(DyadicGen& g) { return 1.0L + real(g.bits(2)); }

// ---------------------------------------------------------------- stepfn

void chk_rearrange_equimeasurable(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const StepFunction f = g.fn(T);
        const StepFunction fs = rearrange(f);
        real worst = 0.0L;
        const auto probe = [&](real lam) {
            worst = std::max(worst,
                             std::abs(distribution(f, lam) - distribution(fs, lam)));
        };
        probe(0.0L);
        probe(f.max_value() + 1.0L / 256.0L);
        for (real v : f.values()) {
            probe(v);
            probe(0.5L * v);
            probe(v + 1.0L / 512.0L);
        }
        note(r, worst, 0.0L);
    }
}

void chk_rearrange_idempotent(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const StepFunction f = g.fn(dyadic_T(g));
        const StepFunction r1 = rearrange(f);
        const StepFunction r2 = rearrange(r1);
        // Dyadic lattice: widths and products are exact, so both the
        // fixed point and the integral are equalities, not tolerances.
        const real residual =
            std::max(r1 == r2 ? 0.0L : 1.0L, std::abs(integrate(f) - integrate(r1)));
        note(r, residual, 0.0L);
    }
}

void chk_submajorize_preorder(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const StepFunction mid = g.nonzero_fn(T);
        const StepFunction low = mid.scaled(real(1 + g.bits(4)) / 4.0L);
        const StepFunction high = mid.plus(g.fn(T));
        const bool ok = submajorizes(mid, mid) && submajorizes(mid, low) &&
                        submajorizes(high, mid) && submajorizes(high, low);
        flag(r, ok);
    }
}

void chk_rearrange_contraction(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const StepFunction f = g.nonzero_fn(dyadic_T(g));
        std::vector<int> shift(f.values().size());
        for (int& s : shift) s = int(g.bits(3));
        real prev = kInf;
        real last = kInf;
        bool mono = true;
        for (int e = 2; e <= 8; e += 2) {
            // f - f_e cellwise, with per-cell rates: each cell decays
            // by an exact power of two, so the tail is exactly bounded.
            std::vector<real> d(f.values().size());
            for (std::size_t c = 0; c < d.size(); ++c)
                d[c] = std::ldexp(f.values()[c], -(e + shift[c]));
            last = rearrange(StepFunction(f.breaks(), std::move(d))).max_value();
            mono = mono && last <= prev;
            prev = last;
        }
        const real bound = std::ldexp(f.max_value(), -8);
        note(r, std::max(mono ? 0.0L : 1.0L, last - bound), 0.0L);
    }
}

void chk_hardy_pairing(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const StepFunction f2 = g.nonzero_fn(T);
        const StepFunction f1 = (i % 2 == 0)
                                    ? f2.scaled(real(g.bits(5)) / 4.0L)
                                    : f2.times(g.fn(T, 3).scaled(0.5L));
        const StepFunction dec = rearrange(g.fn(T));
        const HardyPairingResult res = hardy_pairing_check(f1, f2, dec);
        note(r, std::max(res.holds ? 0.0L : 1.0L, res.lhs - res.rhs),
             1e-15L * (1.0L + std::abs(res.rhs)));
    }
}

// --------------------------------------------------------------- orlicz

void chk_phi_convexity(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const real u = real(g.bits(1024)) / 256.0L;
        const real v = u + real(1 + g.bits(512)) / 256.0L;
        const real th = real(1 + g.bits(255)) / 256.0L;
        const real mid = phi.eval(th * u + (1.0L - th) * v);
        const real hull = th * phi.eval(u) + (1.0L - th) * phi.eval(v);
        note(r, std::max(0.0L, mid - hull) / (1.0L + hull), 1e-12L);
    }
}

void chk_phi_derivative_ladder(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const real u = real(g.bits(768)) / 256.0L;
        const real d = phi.right_derivative(u);
        real prev = kInf;
        real worst = 0.0L;
        for (int e = 2; e <= 10; e += 2) {
            const real h = std::ldexp(1.0L, -e);
            const real q = (phi.eval(u + h) - phi.eval(u)) / h;
            worst = std::max(worst, q - prev); // quotients shrink with h
            worst = std::max(worst, d - q);    // and never undercut phi'
            prev = q;
        }
        note(r, worst / (1.0L + std::abs(d)), 1e-9L);
    }
}

void chk_phi_biconjugate(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const ExtOrliczFunction second = phi.complementary().conjugate();
        real worst = 0.0L;
        for (int j = 0; j < 8; ++j) {
            const real u = real(g.bits(1024)) / 256.0L;
            worst = std::max(worst, rel(second.eval(u), phi.eval(u)));
        }
        note(r, worst, 1e-6L);
    }
}

void chk_young_gap(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const real u = real(g.bits(768)) / 256.0L;
        const real v = real(g.bits(2048)) / 256.0L;
        const real gap = young_gap(phi, u, v);
        const real graph = std::abs(young_gap(phi, u, phi.right_derivative(u)));
        const real scale = 1.0L + phi.eval(u) + u * v;
        note(r, std::max(-gap, graph) / scale, 1e-12L);
    }
}

void chk_phi_inverse_roundtrip(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const real u = real(1 + g.bits(1024)) / 256.0L;
        const real back = phi.inverse(phi.eval(u));
        note(r, std::abs(back - u) / (1.0L + u), 1e-10L);
    }
}

// ---------------------------------------------------------------- level

void chk_level_monotone(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f1 = g.fn(T);
        const StepFunction f2 = f1.plus(g.fn(T));
        const StepFunction f3 = f2.plus(g.fn(T));
        const StepFunction l1 = halperin_level(f1, w).level;
        const StepFunction l2 = halperin_level(f2, w).level;
        const StepFunction l3 = halperin_level(f3, w).level;
        real worst = 0.0L;
        real scale = 1.0L + l3.max_value();
        for (const auto& [lo, hi] : {std::pair{&l1, &l2}, std::pair{&l2, &l3}}) {
            const std::vector<real> grid = merged_grid(*lo, *hi);
            for (std::size_t j = 0; j + 1 < grid.size(); ++j)
                worst = std::max(worst, lo->value_at(grid[j]) - hi->value_at(grid[j]));
        }
        note(r, worst / scale, 1e-12L);
    }
}

void chk_level_hull_majorant(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.fn(T);
        const StepFunction slopes = sinnamon_level(f, w);
        const StepFunction rate = slopes.times(w.fn());
        const StepFunction mass = f.extended_to(T).times(w.fn());
        const real scale = 1.0L + integrate(mass);
        real worst = 0.0L;
        // slopes decrease along the hull ...
        for (std::size_t j = 0; j + 1 < slopes.values().size(); ++j)
            worst = std::max(worst, (slopes.values()[j + 1] - slopes.values()[j]) /
                                        (1.0L + slopes.max_value()));
        // ... the hull majorizes the mass at every node, with equality
        // at the far end ...
        const std::vector<real> grid = merged_grid(rate, mass);
        for (real t : grid)
            worst = std::max(worst,
                             (integrate(mass, 0.0L, t) - integrate(rate, 0.0L, t)) / scale);
        worst = std::max(worst, std::abs(integrate(rate) - integrate(mass)) / scale);
        // ... and touches it at every vertex, so lowering any vertex
        // would break the majorization.
        for (std::size_t j = 0; j + 1 < slopes.values().size(); ++j) {
            if (slopes.values()[j] <= slopes.values()[j + 1]) continue;
            const real t = slopes.breaks()[j + 1];
            worst = std::max(worst, std::abs(integrate(rate, 0.0L, t) -
                                             integrate(mass, 0.0L, t)) /
                                        scale);
        }
        note(r, worst, 1e-10L);
    }
}

void chk_level_prefix_mass(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.fn(T).extended_to(T);
        const StepFunction lvl = halperin_level(f, w).level;
        const real scale = 1.0L + integrate(f);
        real worst = std::abs(integrate(lvl) - integrate(f)) / scale;
        for (real t : merged_grid(lvl, f))
            worst = std::max(worst,
                             (integrate(f, 0.0L, t) - integrate(lvl, 0.0L, t)) / scale);
        note(r, worst, 1e-12L);
    }
}

void chk_level_idempotent(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction l1 = halperin_level(g.fn(T), w).level;
        const StepFunction l2 = halperin_level(l1, w).level;
        real worst = 0.0L;
        for (real t : merged_grid(l1, l2)) {
            if (t >= T) break;
            const real a = l1.value_at(t), b = l2.value_at(t);
            worst = std::max(worst, std::abs(a - b) / (1.0L + std::abs(a)));
        }
        note(r, worst, 1e-14L);
    }
}

void chk_level_crosscheck(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const LevelCrosscheck c = crosscheck_level(g.fn(T), g.weight(T));
        note(r, std::max(c.ok ? 0.0L : 1.0L, c.max_deviation), 1e-10L);
    }
}

// -------------------------------------------------------------- modular

void chk_p_below_q(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T, 5);
        const real q = q_modular(phi.ext(), w, f);
        const real p = p_modular(phi, w, f, PMode::convex_opt).value;
        const real above = p - q * (1.0L + 1e-9L) - 1e-15L; // P <= Q
        const real apart = std::abs(p - q) / (1.0L + q);    // and P = Q here
        note(r, std::max(above > 0.0L ? 1.0L + above : 0.0L, apart), 1e-6L);
    }
}

// Hull-slope route for Q that never divides by w; shares only step
// arithmetic with q_profile.
real q_hull_oracle(const ExtOrliczFunction& phi, const Weight& w,
                   const StepFunction& f) {
    const StepFunction fs = rearrange(f).extended_to(w.domain_end());
    const StepFunction slopes = sinnamon_level(fs.divided_by(w.fn()), w);
    const std::vector<real> grid = merged_grid(slopes, w.fn());
    real acc = 0.0L;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const real s = slopes.value_at(grid[i]);
        if (s <= 0.0L) continue;
        const real val = phi.eval(s);
        if (std::isinf(val)) return kInf;
        acc += val * w.fn().value_at(grid[i]) * (grid[i + 1] - grid[i]);
    }
    return acc;
}

void chk_q_dual_routes(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = finite_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.fn(T);
        const real q = q_modular(phi.ext(), w, f); // cross-checks internally
        note(r, rel(q, q_hull_oracle(phi.ext(), w, f)), 1e-10L);
    }
}

void chk_norm_axioms(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const Space space = i % 2 == 0 ? Space::m : Space::lambda;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        const StepFunction h = g.nonzero_fn(T);
        const real nf = luxemburg_norm(phi, w, f, space).value;
        const real nh = luxemburg_norm(phi, w, h, space).value;
        const real nsum = luxemburg_norm(phi, w, f.plus(h), space).value;
        const real c = real(1 + g.bits(8)) / 4.0L;
        const real nscaled = luxemburg_norm(phi, w, f.scaled(c), space).value;
        const real nstar = luxemburg_norm(phi, w, rearrange(f), space).value;
        const real scale = 1.0L + nf + nh;
        real worst = (nsum - nf - nh) / scale;              // triangle
        worst = std::max(worst, std::abs(nscaled - c * nf) / scale); // homogeneity
        worst = std::max(worst, (nf - nsum) / scale);       // monotone under f <= f+h
        worst = std::max(worst, std::abs(nstar - nf) / scale);       // f vs f*
        note(r, worst, 1e-8L);
    }
}

void chk_lux_orlicz_sandwich(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const Space space = i % 2 == 0 ? Space::m : Space::lambda;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        const real lux = luxemburg_norm(phi, w, f, space).value;
        const real orl = orlicz_norm(phi, w, f, space).value;
        const real worst = std::max(lux - orl, orl - 2.0L * lux) / (1.0L + lux);
        note(r, worst, 1e-8L);
    }
}

void chk_unit_ball_modular(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction raw = g.nonzero_fn(T, 5);
        const real c = real(1 + g.bits(4)) / 4.0L;
        const StepFunction f =
            raw.scaled(c / luxemburg_norm(phi, w, raw, Space::m).value);
        const real q = q_modular(phi.ext(), w, f);
        const real p = p_modular(phi, w, f, PMode::convex_opt).value;
        note(r, std::max(q - c, p - q * (1.0L + 1e-9L)), 1e-8L);
    }
}

void chk_vanishing_norm_modular(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        real worst = 0.0L;
        real final_q = 0.0L;
        for (real k : {1.0L, 2.0L, 10.0L}) {
            real prev = kInf;
            for (int j = 1; j <= 8; ++j) {
                const real q = q_modular(phi.ext(), w, f.scaled(k * std::ldexp(1.0L, -2 * j)));
                if (q > prev) // must shrink with the norm
                    worst = std::max(worst, 1.0L + (q - prev));
                prev = q;
            }
            final_q = std::max(final_q, prev);
        }
        note(r, std::max(worst, final_q), 1e-3L);
    }
}

void chk_identity_phi_l1(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real c = real(1 + g.bits(8)) / 4.0L;
        const ExtOrliczFunction lin = ExtOrliczFunction::power(1.0L, c);
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.fn(T);
        const real want = c * integrate(rearrange(f));
        const real got = luxemburg_norm(lin, w, f, Space::m).value;
        const real q = q_modular(lin, w, f);
        // The norm is the L1 mass on the nose; the modular route agrees
        // up to the one division it performs.
        note(r, std::max(got == want ? 0.0L : 1.0L, rel(q, want)), 1e-13L);
    }
}

void chk_k_interval_bracket(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const Space space = i % 2 == 0 ? Space::m : Space::lambda;
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        const OrliczNormResult res = orlicz_norm(phi, w, f, space);
        if (res.kind != OrliczNormKind::attained || res.k.unbounded_above) {
            flag(r, false); // N-function derivatives are unbounded
            continue;
        }
        const ModularProfile prof =
            space == Space::lambda ? rho_profile(w, f) : q_profile(w, f);
        const ExtOrliczFunction conj = phi.complementary();
        const auto D = [&](real k) {
            real acc = 0.0L;
            for (std::size_t j = 0; j < prof.args.size(); ++j)
                acc += conj.eval(phi.right_derivative(k * prof.args[j])) *
                       prof.masses[j];
            return acc;
        };
        const auto Tof = [&](real k) {
            return (1.0L + prof.eval_scaled(phi.ext(), k)) / k;
        };
        const real delta = 1e-6L * res.k.k_star;
        real worst = std::max(D(res.k.k_star - delta) - 1.0L,
                              1.0L - D(res.k.k_double_star + delta));
        const real t_star = Tof(res.k.k_star);
        for (int j = 0; j <= 20; ++j) {
            // 21 log-spaced probes strictly outside [k*, k**], half on
            // each side.
            const real c = std::pow(8.0L, real(j % 11) / 10.0L);
            const real k = j % 2 == 0 ? res.k.k_star / (1.001L * c)
                                      : res.k.k_double_star * 1.001L * c;
            worst = std::max(worst, (t_star - Tof(k)) / (1.0L + t_star));
        }
        note(r, worst, 1e-9L);
    }
}

// -------------------------------------------------------------- duality

void chk_holder_bound(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const HolderReport h = holder_audit(phi, w, g.nonzero_fn(T), g.nonzero_fn(T));
        const real bound = std::min(h.bound_lux_orlicz, h.bound_orlicz_lux);
        real worst = std::max(h.holds ? 0.0L : 1.0L,
                              (h.pairing - bound) / (1.0L + bound));
        worst = std::max(worst,
                         (h.pairing - h.pairing_star) / (1.0L + h.pairing_star));
        note(r, worst, 1e-8L);
    }
}

void chk_dual_oracle(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        const real norm = orlicz_norm(phi, w, f, Space::m).value;
        const DualNormCertificate c = dual_norm_oracle(phi, w, f, 4 + int(g.bits(4)));
        const real over = c.value - norm - 1e-8L * (1.0L + norm);
        const real deficit = (norm - c.value) / (1.0L + norm);
        real worst = std::max(over > 0.0L ? 1.0L + over : 0.0L, deficit);
        worst = std::max(worst, c.witness_modular - 1.0L - 1e-9L > 0.0L ? 1.0L : 0.0L);
        note(r, worst, 1e-4L);
    }
}

void chk_functional_norm_zero(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction h = g.nonzero_fn(T);
        const real a = functional_norm(phi, w, {h, 0.0L, {}});
        const real b = luxemburg_norm(phi.complementary(), w, h, Space::m).value;
        note(r, rel(a, b), 1e-8L);
    }
}

void chk_attainment_fixture(DyadicGen& g, int n, CheckResult& r) {
    const OrliczFunction p2 = OrliczFunction::power(2.0L);
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real a = std::ldexp(1.0L, int(g.bits(3)) - 1);  // {1/2, 1, 2}
        const real T = std::ldexp(1.0L, int(g.bits(3)) - 1);
        const real d = real(1 + g.bits(8)) / 2.0L;
        const Weight w{std::vector<real>{0.0L, T}, std::vector<real>{a}};
        const real c = 0.5L / std::sqrt(a * T); // Orlicz M-norm lands on 1
        const StepFunction f = StepFunction::constant(c, T);
        const StepFunction h = StepFunction::constant(d, T);

        const AttainmentReport ok = attainment_check(p2, w, f, h, 0.0L, 0.0L, 2.0L);
        const real resid =
            std::max({ok.residual_i, ok.residual_ii, ok.residual_iii});
        bool pass = ok.attained;
        // verdict is monotone in the tolerance
        pass = pass && (!(resid < 1e-8L) || resid < 1e-6L);
        // each single-condition mutation must flip it
        pass = pass &&
               !attainment_check(p2, w, f, h, 0.3L, 0.2L, 2.0L).attained;
        pass = pass &&
               !attainment_check(p2, w, f, StepFunction::indicator(d, 0.0L, 0.5L * T, T),
                                 0.0L, 0.0L, 2.0L)
                    .attained;
        bool k_rejected = false;
        try {
            k_rejected = !attainment_check(p2, w, f, h, 0.0L, 0.0L, 3.0L).attained;
        } catch (const std::invalid_argument&) {
            k_rejected = true; // 3 sits outside the K-interval
        }
        note(r, std::max(pass && k_rejected ? 0.0L : 1.0L, resid), 1e-6L);
    }
}

void chk_extension_gap_dichotomy(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const OrliczFunction& phi = nfun_pool(g.bits(64));
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        StepFunction h = g.nonzero_fn(T);
        h = h.scaled(1.0L / luxemburg_norm(phi.complementary(), w, h, Space::m).value);
        const real s = real(g.bits(5)) / 10.0L;
        const ExtensionGapReport rep = extension_gap(phi, w, h, s);
        bool pass = rep.gap_present == (rep.g_at_1 > 1.0L);
        real worst = 0.0L;
        if (rep.gap_present && !rep.unbounded) {
            pass = pass && rep.lambda0 > 1.0L;
            const OrliczFunction conj(phi.complementary());
            const auto gl = [&](real lam) {
                return p_modular(conj, w, h.scaled(1.0L / lam), PMode::via_q).value +
                       s / lam;
            };
            worst = std::max(1.0L - gl(rep.lambda0),
                             gl(rep.lambda0 * 1.01L) - 1.0L);
        } else if (!rep.gap_present) {
            worst = rep.g_at_1 - 1.0L;
        }
        note(r, std::max(pass ? 0.0L : 1.0L, worst), 1e-9L);
    }
}

// ------------------------------------------------------------ pathology

bool witness_gap_holds(const OrliczFunction& phi, int n, real u) {
    return phi.eval((1.0L + 1.0L / n) * u) > std::ldexp(1.0L, n) * phi.eval(u);
}

void chk_family_invariants(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const bool plain = g.bits(2) == 0;
        const OrliczFunction phi =
            plain ? OrliczFunction::exp_plain() : OrliczFunction::exp_n();
        const int k_count = 1 + int(g.bits(2));
        const int depth = 2 + int(g.bits(3));
        const int extra = int(g.bits(3));
        const Weight w{std::vector<real>{0.0L, 1.0L},
                       std::vector<real>{1.0L + real(g.bits(2))}};
        const WitnessSequence ws =
            delta2_witness_sequence(phi, k_count + depth + extra, 2.0L, 1e6L);
        bool pass = ws.complete;
        real worst = 0.0L;
        if (pass) {
            const PathologyFamily fam =
                build_disjoint_family(phi, w, ws.u, k_count, depth);
            const int N = int(fam.u_seq.size());
            for (int m = 1; m <= N; ++m) {
                pass = pass && witness_gap_holds(phi, m, fam.u_seq[m - 1]);
                const real mass = std::ldexp(1.0L, -m) / phi.eval(fam.u_seq[m - 1]);
                const real err =
                    std::abs(w.W_between(fam.t_seq[m], fam.t_seq[m - 1]) - mass);
                if (err > 1e-10L && err > 1e-12L * mass)
                    worst = std::max(worst, err);
            }
            pass = pass && fam.t_seq.back() == 0.0L;
            for (std::size_t k = 0; k + 1 < fam.offsets.size(); ++k)
                pass = pass && fam.offsets[k] + fam.t_seq[fam.n_seq[k]] <=
                                   fam.offsets[k + 1] + 1e-18L;
            pass = pass &&
                   fam.offsets.back() + fam.t_seq[fam.n_seq.back()] <=
                       w.domain_end() + 1e-18L;
            for (int k = 0; k < fam.k_count; ++k) {
                const real q = q_modular(phi.ext(), w, fam.f_blocks[k]);
                worst = std::max(
                    worst, q - (std::ldexp(1.0L, -(k + 1)) + 1e-10L));
            }
        }
        note(r, std::max(pass ? 0.0L : 1.0L, worst), 0.0L);
    }
}

void chk_embedding_forward(DyadicGen& g, int n, CheckResult& r) {
    struct Pair {
        OrliczFunction a, b;
        real slope, cutoff;
    };
    static const Pair pairs[] = {
        {OrliczFunction::power(2.0L), OrliczFunction::power(3.0L), 1.0L, 1.0L},
        {OrliczFunction::power(1.5L), OrliczFunction::power(2.0L), 1.0L, 1.0L},
        {OrliczFunction::power(1.5L), OrliczFunction::power(3.0L), 1.0L, 1.0L},
        {OrliczFunction::power(3.0L), OrliczFunction::exp_n(), 6.0L, 1.0L},
    };
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const Pair& pr = pairs[g.bits(64) % 4];
        const real T = dyadic_T(g);
        const Weight w = g.weight(T);
        const StepFunction f = g.nonzero_fn(T);
        const EmbeddingReport rep =
            embedding_forward_check(pr.a, pr.b, w, f, pr.slope, pr.cutoff);
        const bool pass = rep.order_verified && rep.holds && rep.big_m >= 1.0L;
        note(r, std::max(pass ? 0.0L : 1.0L, (rep.lhs - rep.rhs) / (1.0L + rep.rhs)),
             1e-9L);
    }
}

void chk_family_partials_monotone(DyadicGen& g, int n, CheckResult& r) {
    const OrliczFunction phi = OrliczFunction::exp_n();
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const int depth = 2 + int(g.bits(2));
        const int extra = int(g.bits(2));
        const Weight w{std::vector<real>{0.0L, 1.0L}, std::vector<real>{1.0L}};
        const WitnessSequence ws =
            delta2_witness_sequence(phi, 1 + depth + extra, 2.0L, 1e6L);
        bool pass = ws.complete;
        real worst = 0.0L;
        if (pass) {
            const PathologyFamily fam = build_disjoint_family(phi, w, ws.u, 1, depth);
            const real s1 = 1.0L + real(g.bits(3)) / 4.0L;
            const real s2 = s1 + real(1 + g.bits(2)) / 4.0L;
            const FamilyReport a = verify_family(fam, s1, 1e6L);
            const FamilyReport b = verify_family(fam, s2, 1e6L);
            const auto& pa = a.divergence[0].partials;
            const auto& pb = b.divergence[0].partials;
            pass = pass && pa.size() == pb.size();
            for (std::size_t j = 0; pass && j < pa.size(); ++j) {
                if (j + 1 < pa.size()) // deeper truncation only adds mass
                    worst = std::max(worst, pa[j] - pa[j + 1]);
                worst = std::max(worst, pa[j] - pb[j]); // and s scales it up
            }
        }
        note(r, std::max(pass ? 0.0L : 1.0L, worst), 0.0L);
    }
}

// ------------------------------------------------------------------ io

void chk_json_roundtrip(DyadicGen& g, int n, CheckResult& r) {
    for (int i = 0; i < n; ++i) {
        ++r.cases;
        const real T = dyadic_T(g);
        const StepFunction f = g.fn(T);
        const Weight w = g.weight(T);
        const StepFunction f2 = step_from_json(to_json(f));
        const Weight w2 = weight_from_json(to_json(w));
        bool pass = f2 == f && w2.fn() == w.fn();
        // serialization is stable under a parse/emit cycle ...
        pass = pass && to_json(f).dump() == to_json(f2).dump();
        // ... and a replayed seed regenerates the instance bit-for-bit.
        DyadicGen replay_a(0x5EEDULL + i), replay_b(0x5EEDULL + i);
        pass = pass && replay_a.fn(2.0L) == replay_b.fn(2.0L);
        flag(r, pass);
    }
}

struct Entry {
    const char* name;
    int stride; // heavy checks subsample the requested case count
    void (*fn)(DyadicGen&, int, CheckResult&);
};

constexpr Entry kChecks[] = {
    {"rearrange-equimeasurable", 1, chk_rearrange_equimeasurable},
    {"rearrange-idempotent-integral", 1, chk_rearrange_idempotent},
    {"submajorize-preorder", 1, chk_submajorize_preorder},
    {"rearrange-contraction", 1, chk_rearrange_contraction},
    {"hardy-pairing", 1, chk_hardy_pairing},
    {"phi-convexity", 1, chk_phi_convexity},
    {"phi-derivative-ladder", 1, chk_phi_derivative_ladder},
    {"phi-biconjugate", 1, chk_phi_biconjugate},
    {"young-gap-nonnegative", 1, chk_young_gap},
    {"phi-inverse-roundtrip", 1, chk_phi_inverse_roundtrip},
    {"level-monotone", 1, chk_level_monotone},
    {"level-hull-majorant", 1, chk_level_hull_majorant},
    {"level-prefix-mass", 1, chk_level_prefix_mass},
    {"level-idempotent", 1, chk_level_idempotent},
    {"level-crosscheck", 1, chk_level_crosscheck},
    {"p-below-q-nfunction", 8, chk_p_below_q},
    {"q-dual-routes", 1, chk_q_dual_routes},
    {"norm-axioms", 2, chk_norm_axioms},
    {"lux-orlicz-sandwich", 2, chk_lux_orlicz_sandwich},
    {"unit-ball-modular-bound", 8, chk_unit_ball_modular},
    {"vanishing-norm-modular", 2, chk_vanishing_norm_modular},
    {"identity-phi-l1", 1, chk_identity_phi_l1},
    {"k-interval-bracket", 4, chk_k_interval_bracket},
    {"holder-bound", 2, chk_holder_bound},
    {"dual-oracle-consistency", 4, chk_dual_oracle},
    {"functional-norm-zero-singular", 4, chk_functional_norm_zero},
    {"attainment-fixture", 4, chk_attainment_fixture},
    {"extension-gap-dichotomy", 4, chk_extension_gap_dichotomy},
    {"family-invariants-audit", 4, chk_family_invariants},
    {"embedding-forward-bound", 4, chk_embedding_forward},
    {"family-partials-monotone", 4, chk_family_partials_monotone},
    {"json-roundtrip-determinism", 1, chk_json_roundtrip},
};

} // namespace

SuiteReport run_suite(std::uint64_t seed, int cases) {
    SuiteReport rep;
    rep.seed = seed;
    rep.cases = cases;
    if (cases <= 0) return rep;
    for (std::size_t i = 0; i < std::size(kChecks); ++i) {
        const Entry& e = kChecks[i];
        CheckResult res;
        res.name = e.name;
        DyadicGen gen(mix_seed(seed, i));
        try {
            e.fn(gen, std::max(1, cases / e.stride), res);
        } catch (const std::exception&) {
            // an instance tripping an internal cross-check is itself a
            // finding; surface it instead of aborting the run
            ++res.failures;
            res.worst_residual = kInf;
        }
        rep.checks.push_back(std::move(res));
    }
    return rep;
}

std::vector<std::string> suite_check_names() {
    std::vector<std::string> names;
    for (const Entry& e : kChecks) names.emplace_back(e.name);
    return names;
}

} // namespace olk
