#include "olk/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "olk/level.hpp"

namespace olk {

namespace {

// P_{psi,w} through the cheapest honest route: the P = Q shortcut when
// the carrier certifies as an N-function, subgradient descent otherwise.
real p_of(const ExtOrliczFunction& psi, const Weight& w, const StepFunction& g) {
    if (g.is_zero()) return 0.0;
    std::optional<OrliczFunction> fin;
    if (psi.finite_everywhere()) {
        try {
            fin.emplace(psi);
        } catch (const std::invalid_argument&) {
            // flat near zero: stays on the extended-carrier path
        }
    }
    if (fin)
        return p_modular(*fin, w, g,
                         fin->is_n_function() ? PMode::via_q : PMode::convex_opt)
            .value;
    return p_modular(psi, w, g, PMode::convex_opt).value;
}

// g(lambda) = P(h/lambda) + s_norm/lambda, the norm-defining excess.
real gap_value(const ExtOrliczFunction& psi, const Weight& w,
               const StepFunction& h, real s_norm, real lam) {
    real acc = s_norm / lam;
    if (!h.is_zero()) {
        const real p = p_of(psi, w, h.scaled(1.0L / lam));
        if (std::isinf(p)) return kInf;
        acc += p;
    }
    return acc;
}

void require_within(const Weight& w, const StepFunction& f, const char* who) {
    if (f.domain_end() > w.domain_end())
        throw std::invalid_argument(std::string(who) +
                                    ": function exceeds the weight's domain");
}

} // namespace

std::optional<real> DualFunctional::s_at(real k) const {
    for (const auto& [kk, val] : s_oracle)
        if (std::abs(kk - k) <= 1e-12L * (1.0L + std::abs(k))) return val;
    return std::nullopt;
}

HolderReport holder_audit(const OrliczFunction& phi, const Weight& w,
                          const StepFunction& f, const StepFunction& g) {
    require_within(w, f, "holder_audit");
    require_within(w, g, "holder_audit");
    const real T = w.domain_end();
    const StepFunction fe = f.extended_to(T), ge = g.extended_to(T);
    if (fe.is_zero() || ge.is_zero()) return {0.0, 0.0, 0.0, 0.0, true};

    const real pairing = integrate(fe.times(ge));
    const real pairing_star = integrate(rearrange(fe).times(rearrange(ge)));

    const OrliczFunction conj(phi.complementary());
    const real b1 = luxemburg_norm(phi, w, f, Space::lambda).value *
                    orlicz_norm(conj, w, g, Space::m).value;
    const real b2 = orlicz_norm(phi, w, f, Space::lambda).value *
                    luxemburg_norm(conj, w, g, Space::m).value;

    const real tol = 1e-8L;
    const bool holds =
        pairing <= pairing_star + tol * (1.0L + pairing_star) &&
        pairing_star <= std::min(b1, b2) + tol * (1.0L + std::min(b1, b2));
    return {pairing, pairing_star, b1, b2, holds};
}

DualNormCertificate dual_norm_oracle(const OrliczFunction& phi, const Weight& w,
                                     const StepFunction& f, int budget) {
    if (budget < 0)
        throw std::invalid_argument("dual_norm_oracle: budget must be nonnegative");
    require_within(w, f, "dual_norm_oracle");
    const real T = w.domain_end();
    const StepFunction fs = rearrange(f).extended_to(T);
    if (fs.is_zero()) return {0.0, StepFunction::zero(T), 0.0, 0};

    const ExtOrliczFunction psi = phi.complementary();
    const LevelDecomposition dec = halperin_level(fs, w);
    const std::vector<real> grid = merged_grid(fs, w.fn());
    const std::size_t n = grid.size() - 1;

    // f0/w cellwise; block constants come from the intervals directly,
    // untouched cells divide pointwise.
    std::vector<real> ratio(n);
    {
        std::size_t iv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const real mid = 0.5L * (grid[i] + grid[i + 1]);
            while (iv < dec.intervals.size() && dec.intervals[iv].b <= mid) ++iv;
            const bool inside = iv < dec.intervals.size() &&
                                dec.intervals[iv].a <= mid &&
                                mid < dec.intervals[iv].b;
            const real fv = fs.value_at(mid);
            ratio[i] = inside ? dec.intervals[iv].ratio
                              : (fv > 0.0 ? fv / w.fn().value_at(mid) : 0.0);
        }
    }

    DualNormCertificate best{0.0, StepFunction::zero(T), 0.0, 0};
    const auto score = [&](const StepFunction& cand) {
        if (cand.is_zero()) return;
        StepFunction gs = rearrange(cand);
        const real lux = luxemburg_norm(psi, w, gs, Space::lambda).value;
        if (!(lux > 0.0) || std::isinf(lux)) return;
        gs = gs.scaled(1.0L / lux);
        const real rho = rho_modular(psi, w, gs);
        if (rho > 1.0L + 1e-9L) return;
        ++best.candidates;
        const real val = integrate(fs.times(gs));
        if (val > best.value) {
            best.value = val;
            best.witness = gs;
            best.witness_modular = rho;
        }
    };

    // Young-equality family phi'(k f0/w) over the minimizing k-interval;
    // when the norm is a limit the family chases it along a k-ray.
    {
        const OrliczNormResult nr = orlicz_norm(phi, w, f, Space::m);
        std::vector<real> ks;
        if (nr.kind == OrliczNormKind::attained) {
            const real k1 = nr.k.k_star;
            const real k2 = nr.k.unbounded_above ? 8.0L * k1 : nr.k.k_double_star;
            ks = {k1, 0.5L * (k1 + k2), k2};
        } else {
            real k = 1.0;
            for (int i = 0; i < 16; ++i, k *= 4.0L) ks.push_back(k);
        }
        for (const real k : ks) {
            std::vector<real> vals(n);
            for (std::size_t i = 0; i < n; ++i)
                vals[i] = phi.right_derivative(k * ratio[i]);
            score(StepFunction(std::vector<real>(grid), std::move(vals)));
        }
    }

    // Flat profile plus random nonincreasing shapes.
    score(StepFunction::constant(1.0, T));
    std::mt19937_64 rng(0xD11AUL);
    std::uniform_real_distribution<double> level0(-2.0, 2.0), decay(0.05, 1.0);
    for (int b = 0; b < budget; ++b) {
        std::vector<real> vals(n);
        real cur = std::exp((real)level0(rng));
        for (std::size_t i = 0; i < n; ++i) {
            vals[i] = cur;
            cur *= (real)decay(rng);
        }
        score(StepFunction(std::vector<real>(grid), std::move(vals)));
    }
    return best;
}

real functional_norm(const OrliczFunction& phi, const Weight& w,
                     const DualFunctional& F) {
    if (F.s_norm < 0.0)
        throw std::invalid_argument("functional_norm: s_norm must be nonnegative");
    require_within(w, F.h, "functional_norm");
    if (F.h.is_zero() && F.s_norm == 0.0) return 0.0;
    const ExtOrliczFunction psi = phi.complementary();
    const auto g = [&](real lam) { return gap_value(psi, w, F.h, F.s_norm, lam); };

    real hi = 1.0;
    int guard = 0;
    while (g(hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 2000)
            throw std::logic_error("functional_norm: no finite bracket");
    }
    real lo = 0.0;
    if (hi == 1.0) {
        real cand = 0.5;
        while (cand > 1e-4900L && g(cand) <= 1.0) {
            hi = cand;
            cand *= 0.5L;
        }
        lo = cand;
    }
    for (int it = 0; it < 200; ++it) {
        const real mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-10L * hi) break;
    }
    return hi;
}

AttainmentReport attainment_check(const OrliczFunction& phi, const Weight& w,
                                  const StepFunction& f, const StepFunction& h,
                                  real s_norm, real s_value_at_kf, real k) {
    require_within(w, f, "attainment_check");
    require_within(w, h, "attainment_check");
    if (f.is_zero())
        throw std::invalid_argument("attainment_check: ||f||^0 must be 1, got 0");

    const OrliczNormResult nf = orlicz_norm(phi, w, f, Space::lambda);
    if (std::abs(nf.value - 1.0L) > 1e-8L)
        throw std::invalid_argument(
            "attainment_check: ||f||^0 must be 1 within 1e-8, got " +
            std::to_string((double)nf.value));
    if (nf.kind != OrliczNormKind::attained)
        throw std::invalid_argument(
            "attainment_check: the norm of f is a limit, no k attains it");
    const bool k_ok =
        k >= nf.k.k_star - 1e-8L * (1.0L + nf.k.k_star) &&
        (nf.k.unbounded_above ||
         k <= nf.k.k_double_star + 1e-8L * (1.0L + nf.k.k_double_star));
    if (!k_ok)
        throw std::invalid_argument(
            "attainment_check: k must lie in [k*, k**] within 1e-8");

    const real norm_f = functional_norm(phi, w, {h, s_norm, {}});
    if (norm_f <= 0.0)
        throw std::invalid_argument("attainment_check: the functional is zero");

    const ExtOrliczFunction psi = phi.complementary();
    const real p_at = h.is_zero() ? 0.0L : p_of(psi, w, h.scaled(1.0L / norm_f));
    const real r1 = std::abs(p_at + s_norm / norm_f - 1.0L);
    const real r2 = std::abs(s_norm - s_value_at_kf) / (1.0L + std::abs(s_norm));

    const real T = w.domain_end();
    const StepFunction fss = rearrange(f.extended_to(T));
    const StepFunction hs = rearrange(h.extended_to(T));
    const StepFunction hlev = halperin_level(hs, w).level;
    const real lhs = k * integrate(hlev.times(fss)) / norm_f;
    const real rhs = rho_modular(phi, w, f.scaled(k)) + p_at;
    const real r3 = std::abs(lhs - rhs) / (1.0L + std::abs(rhs));

    const real pair_plain = integrate(f.extended_to(T).times(h.extended_to(T)));
    const real pair_sorted = integrate(fss.times(hs));
    const real align = std::abs(pair_plain - pair_sorted) / (1.0L + pair_sorted);

    const bool ok = r1 < 1e-6L && r2 < 1e-6L && r3 < 1e-6L;
    return {norm_f, r1, r2, r3, align, ok};
}

ExtensionGapReport extension_gap(const OrliczFunction& phi, const Weight& w,
                                 const StepFunction& h, real s_norm) {
    if (s_norm < 0.0)
        throw std::invalid_argument("extension_gap: s_norm must be nonnegative");
    require_within(w, h, "extension_gap");
    const ExtOrliczFunction psi = phi.complementary();
    const real hn = luxemburg_norm(psi, w, h, Space::m).value;
    if (std::abs(hn - 1.0L) > 1e-8L)
        throw std::invalid_argument(
            "extension_gap: ||h||_M must be 1 within 1e-8, got " +
            std::to_string((double)hn));

    const auto g = [&](real lam) { return gap_value(psi, w, h, s_norm, lam); };
    const real g1 = g(1.0);
    if (g1 <= 1.0L) return {g1, 1.0L, false, false};

    real lo = 1.0, hi = 2.0;
    while (g(hi) > 1.0L) {
        lo = hi;
        hi *= 2.0L;
        if (hi > 1e6L) return {g1, kInf, true, true};
    }
    for (int it = 0; it < 200; ++it) {
        const real mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g(mid) > 1.0L)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12L * hi) break;
    }
    return {g1, lo, true, false};
}

} // namespace olk
