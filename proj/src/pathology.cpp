#include "olk/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace olk {

namespace {

constexpr real kLadderStep = 1.02L;

// phi((1 + 1/n) u) > 2^n phi(u), saturation-aware: an infinite right
// side can only mean the probe overshot the representable range.
bool gap_witness(const OrliczFunction& phi, int n, real u) {
    const real lhs = phi.eval((1.0L + 1.0L / n) * u);
    const real rhs = std::ldexp(1.0L, n) * phi.eval(u);
    if (std::isinf(rhs)) return false;
    return lhs > rhs;
}

// Cut points t_0 > t_1 > ... > t_N = 0 with int_{t_n}^{t_{n-1}} w =
// masses[n-1], via suffix sums (tail-first, so the tiny deep masses
// are not swallowed by the head) and the exact piecewise-linear
// W-inversion.
std::vector<real> cuts_from_masses(const Weight& w, const std::vector<real>& masses,
                                   const char* who) {
    const std::size_t n = masses.size();
    std::vector<real> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + masses[i];
    if (!(suffix[0] < w.total()))
        throw std::domain_error(std::string(who) +
                                ": domain too small: the cut masses need W(T) > " +
                                std::to_string(static_cast<double>(suffix[0])) +
                                ", the weight carries " +
                                std::to_string(static_cast<double>(w.total())));
    std::vector<real> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = w.W_inverse(suffix[i]);
    for (std::size_t i = 1; i <= n; ++i)
        if (!(t[i] < t[i - 1]))
            throw std::logic_error(std::string(who) + ": cut ladder collapsed at n=" +
                                   std::to_string(i));
    return t;
}

// Nonincreasing rearrangement of
//   sum_{n = from}^{from+count-1} vals[n-1] w chi_[t_n, t_{n-1}).
// Weight breakpoints are split inside each span so cell values are
// exact products with w; cells are then sorted by descending value and
// the widths accumulated in that order.  Under a constant weight the
// deep cells are both taller and narrower, so the running sum grows by
// more than an ulp at every step no matter how deep the ladder runs; a
// stepped weight can reorder the cells, and a width the accumulated
// sum swallows is reported rather than silently dropped.
StepFunction assemble_ladder(const Weight& w, const std::vector<real>& vals,
                             const std::vector<real>& t, int from, int count) {
    std::vector<std::pair<real, real>> cells; // value, width
    const auto& wb = w.fn().breaks();
    const int deepest = from + count - 1;
    for (int n = deepest; n >= from; --n) {
        real left = t[n];
        const real right = t[n - 1];
        auto it = std::upper_bound(wb.begin(), wb.end(), left);
        for (; it != wb.end() && *it < right; ++it) {
            cells.emplace_back(vals[n - 1] * w.fn().value_at(left), *it - left);
            left = *it;
        }
        cells.emplace_back(vals[n - 1] * w.fn().value_at(left), right - left);
    }
    std::stable_sort(cells.begin(), cells.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<real> breaks{0.0};
    std::vector<real> values;
    for (const auto& [v, width] : cells) {
        const real next = breaks.back() + width;
        if (!(next > breaks.back()))
            throw std::domain_error(
                "assemble_ladder: the weight folds the ladder so hard a cell "
                "width fell below one ulp of the accumulated support");
        breaks.push_back(next);
        values.push_back(v);
    }
    return StepFunction(std::move(breaks), std::move(values));
}

// Partial sums of phi(scale * vals[n-1]) int_{t_n}^{t_{n-1}} w over the
// deepening truncation n = from .. from+count-1.
BlockDivergence divergence_over(const OrliczFunction& phi, const Weight& w,
                                const std::vector<real>& vals,
                                const std::vector<real>& t, int from, int count,
                                real scale, real threshold) {
    BlockDivergence d;
    real acc = 0.0;
    for (int j = 1; j <= count; ++j) {
        const int n = from + j - 1;
        const real mass = w.W_between(t[n], t[n - 1]);
        const real val = phi.eval(scale * vals[n - 1]);
        const real term = std::isinf(val) ? kInf : val * mass;
        acc = std::isinf(term) ? kInf : acc + term;
        d.terms.push_back(term);
        d.partials.push_back(acc);
        if (d.terms_to_exceed < 0 && acc > threshold) d.terms_to_exceed = j;
    }
    std::size_t q0 = (d.terms.size() * 3) / 4;
    if (q0 < 1) q0 = 1;
    bool nondec = d.terms.size() >= 2, strict = false;
    for (std::size_t i = q0; i < d.terms.size(); ++i) {
        if (d.terms[i] < d.terms[i - 1]) {
            nondec = false;
            break;
        }
        if (d.terms[i] > d.terms[i - 1]) strict = true;
    }
    d.trend_positive = nondec && strict;
    return d;
}

bool constant_weight(const Weight& w) { return w.fn().cells() == 1; }

std::vector<real> normalize_coeffs(const PathologyFamily& fam,
                                   const std::vector<real>& coeffs) {
    std::vector<real> c(coeffs);
    if (c.empty()) c.assign(static_cast<std::size_t>(fam.k_count), 1.0);
    c.resize(static_cast<std::size_t>(fam.k_count), 0.0);
    for (real v : c)
        if (v < 0.0) throw std::invalid_argument("family coefficients must be >= 0");
    return c;
}

// Luxemburg bisection on a fixed ratio/mass profile; the same bracket
// and tolerances as the step-function route.
real lux_on_profile(const ExtOrliczFunction& phi, const ModularProfile& prof) {
    if (prof.args.empty()) return 0.0;
    const auto at = [&](real eps) { return prof.eval_scaled(phi, 1.0L / eps); };
    real hi = 1.0;
    int guard = 0;
    while (at(hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 20000)
            throw std::logic_error("lux_on_profile: no finite bracket");
    }
    real lo = 0.0;
    if (hi == 1.0) {
        real cand = 0.5;
        while (cand > 1e-4900L && at(cand) <= 1.0) {
            hi = cand;
            cand *= 0.5;
        }
        lo = cand;
    }
    for (int it = 0; it < 200; ++it) {
        const real mid = 0.5L * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (at(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-12L * hi) break;
    }
    return hi;
}

// ||sum_k coeffs[k] f_k||_M.  Constant weights go through the exact
// profile (valid at any depth) and are cross-checked against the
// materialized sum whenever the geometry fits; stepped weights need
// the materialized sum outright.
real sum_lux(const PathologyFamily& fam, const std::vector<real>& coeffs) {
    const std::optional<StepFunction> mat = family_sum(fam, coeffs);
    if (!constant_weight(fam.w)) {
        if (!mat)
            throw std::domain_error(
                "family sum: not representable under a stepped weight at this depth");
        return luxemburg_norm(fam.phi, fam.w, *mat, Space::m).value;
    }
    const real via_profile = lux_on_profile(fam.phi.ext(), family_profile(fam, coeffs));
    if (mat) {
        const real via_q = luxemburg_norm(fam.phi, fam.w, *mat, Space::m).value;
        if (std::abs(via_profile - via_q) > 1e-9L * (1.0L + via_q))
            throw std::logic_error("family sum: profile and materialized norms disagree");
    }
    return via_profile;
}

} // namespace

WitnessSequence delta2_witness_sequence(const OrliczFunction& phi, int n_max,
                                        real lo, real hi) {
    if (n_max < 2)
        throw std::invalid_argument("delta2_witness_sequence: n_max must be >= 2");
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("delta2_witness_sequence: bad search range");
    WitnessSequence ws;
    ws.complete = true;
    real start = lo;
    for (int n = 1; n <= n_max; ++n) {
        real u = start;
        bool found = false;
        while (u <= hi) {
            if (gap_witness(phi, n, u)) {
                found = true;
                break;
            }
            u *= kLadderStep;
        }
        if (!found) {
            ws.complete = false;
            ws.failed_at = n;
            break;
        }
        ws.u.push_back(u);
        start = u * kLadderStep;
    }
    return ws;
}

PathologyFamily build_disjoint_family(const OrliczFunction& phi, const Weight& w,
                                      const std::vector<real>& u_seq, int k_count,
                                      int depth) {
    if (k_count < 1 || depth < 1)
        throw std::invalid_argument(
            "build_disjoint_family: k_count and depth must be >= 1");
    if (u_seq.empty() || !(u_seq.front() > 0.0))
        throw std::invalid_argument("build_disjoint_family: u_seq must be positive");
    for (std::size_t i = 1; i < u_seq.size(); ++i)
        if (!(u_seq[i] > u_seq[i - 1]))
            throw std::invalid_argument(
                "build_disjoint_family: u_seq must be strictly increasing");

    const int N = static_cast<int>(u_seq.size());
    std::vector<real> mass(u_seq.size());
    for (int n = 1; n <= N; ++n)
        mass[n - 1] = std::ldexp(1.0L, -n) / phi.eval(u_seq[n - 1]);
    const std::vector<real> t = cuts_from_masses(w, mass, "build_disjoint_family");

    PathologyFamily fam;
    fam.phi = phi;
    fam.w = w;
    fam.u_seq = u_seq;
    fam.t_seq = t;
    fam.k_count = k_count;
    fam.depth = depth;

    // Greedy anchors: the first block sits at t_0 and each chosen index
    // must fit half the remaining room, so later blocks always find
    // space on the right.
    real off = t[0];
    int n_prev = 0;
    for (int k = 1; k <= k_count; ++k) {
        const real room = w.domain_end() - off;
        int n = n_prev + 1;
        while (n + depth <= N && !(t[n] <= 0.5L * room)) ++n;
        if (n + depth > N)
            throw std::invalid_argument(
                "build_disjoint_family: no admissible start for block " +
                std::to_string(k) + ": need u_seq past index " +
                std::to_string(n + depth) + " or a roomier domain");
        fam.n_seq.push_back(n);
        fam.offsets.push_back(off);
        off += t[n];
        n_prev = n;
    }

    for (int k = 0; k < k_count; ++k)
        fam.f_blocks.push_back(
            assemble_ladder(w, u_seq, t, fam.n_seq[k] + 1, depth));

    // Construction-time audit: the witness inequality on every retained
    // index, the cut-point identity, the placement, the block bound.
    for (int n = fam.n_seq.front() + 1; n <= fam.n_seq.back() + depth; ++n)
        if (!gap_witness(phi, n, u_seq[n - 1]))
            throw std::invalid_argument(
                "build_disjoint_family: u_seq entry " + std::to_string(n) +
                " fails the witness inequality at its own index");
    for (int n = 1; n <= N; ++n) {
        const real got = w.W_between(t[n], t[n - 1]);
        const real err = std::abs(got - mass[n - 1]);
        if (err > 1e-10L && err > 1e-12L * mass[n - 1])
            throw std::logic_error("build_disjoint_family: cut identity broke at n=" +
                                   std::to_string(n));
    }
    for (int k = 0; k + 1 < k_count; ++k)
        if (!(fam.offsets[k] + t[fam.n_seq[k]] <= fam.offsets[k + 1]))
            throw std::logic_error("build_disjoint_family: blocks overlap");
    if (!(fam.offsets.back() + t[fam.n_seq.back()] <= w.domain_end()))
        throw std::logic_error("build_disjoint_family: last block exits the domain");
    for (int k = 0; k < k_count; ++k) {
        const real qk = q_modular(phi, w, fam.f_blocks[k]);
        if (!(qk <= std::ldexp(1.0L, -(k + 1)) + 1e-10L))
            throw std::logic_error("build_disjoint_family: block " +
                                   std::to_string(k + 1) + " misses its Q bound");
    }
    return fam;
}

ModularProfile family_profile(const PathologyFamily& fam,
                              const std::vector<real>& coeffs) {
    if (!constant_weight(fam.w))
        throw std::invalid_argument(
            "family_profile: only constant weights keep the merged ladder level");
    const std::vector<real> c = normalize_coeffs(fam, coeffs);
    std::vector<std::pair<real, real>> cells; // ratio, mass
    for (int k = 0; k < fam.k_count; ++k) {
        if (c[k] == 0.0) continue;
        for (int j = 1; j <= fam.depth; ++j) {
            const int n = fam.n_seq[k] + j;
            cells.emplace_back(c[k] * fam.u_seq[n - 1],
                               fam.w.W_between(fam.t_seq[n], fam.t_seq[n - 1]));
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    ModularProfile p;
    for (const auto& [ratio, m] : cells) {
        if (!p.args.empty() && p.args.back() == ratio)
            p.masses.back() += m;
        else {
            p.args.push_back(ratio);
            p.masses.push_back(m);
        }
    }
    return p;
}

std::optional<StepFunction> family_sum(const PathologyFamily& fam,
                                       const std::vector<real>& coeffs) {
    const std::vector<real> c = normalize_coeffs(fam, coeffs);
    std::vector<std::pair<real, real>> cells; // value, width
    for (int k = 0; k < fam.k_count; ++k) {
        if (c[k] == 0.0) continue;
        const StepFunction& blk = fam.f_blocks[k];
        for (std::size_t i = 0; i < blk.cells(); ++i)
            if (blk.values()[i] > 0.0)
                cells.emplace_back(c[k] * blk.values()[i],
                                   blk.breaks()[i + 1] - blk.breaks()[i]);
    }
    if (cells.empty()) return std::nullopt;
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<real> breaks{0.0};
    std::vector<real> values;
    for (const auto& [v, width] : cells) {
        const real next = breaks.back() + width;
        if (!(next > breaks.back())) return std::nullopt; // sub-ulp cell
        if (!values.empty() && values.back() == v) {
            breaks.back() = next;
            continue;
        }
        breaks.push_back(next);
        values.push_back(v);
    }
    return StepFunction(std::move(breaks), std::move(values));
}

FamilyReport verify_family(const PathologyFamily& fam, real s, real threshold) {
    if (!(s >= 1.0))
        throw std::invalid_argument("verify_family: s must be >= 1");
    if (!(threshold > 0.0))
        throw std::invalid_argument("verify_family: threshold must be positive");
    FamilyReport r;
    real max_block = 0.0;
    for (int k = 0; k < fam.k_count; ++k) {
        r.q_blocks.push_back(q_modular(fam.phi, fam.w, fam.f_blocks[k]));
        r.divergence.push_back(divergence_over(fam.phi, fam.w, fam.u_seq, fam.t_seq,
                                               fam.n_seq[k] + 1, fam.depth, s,
                                               threshold));
        max_block = std::max(
            max_block,
            luxemburg_norm(fam.phi, fam.w, fam.f_blocks[k], Space::m).value);
        r.q_mass_dropped += std::ldexp(1.0L, -(fam.n_seq[k] + fam.depth));
    }
    r.tol_trunc = std::clamp(1.0L - max_block, 0.0L, 1.0L);
    r.sum_norm = sum_lux(fam, {});
    r.norm_in_window = r.sum_norm >= 1.0L - r.tol_trunc - 1e-9L &&
                       r.sum_norm <= 1.0L + 1e-8L;
    return r;
}

LinfReport linf_embedding_check(const PathologyFamily& fam, std::vector<real> x,
                                real lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("linf_embedding_check: lambda must lie in (0,1)");
    if (x.empty())
        throw std::invalid_argument("linf_embedding_check: x must be nonempty");
    x.resize(std::min(x.size(), static_cast<std::size_t>(fam.k_count)));
    std::vector<real> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::abs(x[i]);
    LinfReport r;
    real xmax = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] > xmax) {
            xmax = c[i];
            r.k0 = static_cast<int>(i);
        }
    if (xmax == 0.0)
        throw std::invalid_argument("linf_embedding_check: x must not vanish");

    r.upper_lhs = sum_lux(fam, c);
    r.upper_rhs = xmax * sum_lux(fam, {});
    r.upper_holds = r.upper_lhs <= r.upper_rhs * (1.0L + 1e-9L);

    const real scale = c[static_cast<std::size_t>(r.k0)] / (lambda * xmax);
    r.lower = divergence_over(fam.phi, fam.w, fam.u_seq, fam.t_seq,
                              fam.n_seq[static_cast<std::size_t>(r.k0)] + 1,
                              fam.depth, scale, 1.0);
    r.lower_evidence = r.lower.terms_to_exceed >= 0;
    return r;
}

ComparisonReport comparison_counterexample(const OrliczFunction& phi1,
                                           const OrliczFunction& phi2,
                                           const Weight& w, int n_max,
                                           const std::vector<real>& eps_list,
                                           real threshold) {
    if (n_max < 1)
        throw std::invalid_argument("comparison_counterexample: n_max must be >= 1");
    if (!(threshold > 0.0))
        throw std::invalid_argument(
            "comparison_counterexample: threshold must be positive");
    ComparisonReport r;
    r.eps_list = eps_list;

    // Increasing witnesses phi1(a_n) > phi2(2^n n^2 a_n); the first
    // index with none inside the range is evidence the order holds.
    real start = 1e-3L;
    for (int n = 1; n <= n_max; ++n) {
        real a = start;
        bool found = false;
        while (a <= 1e15L) {
            if (phi1.eval(a) >
                phi2.eval(std::ldexp(1.0L, n) * static_cast<real>(n) *
                          static_cast<real>(n) * a)) {
                found = true;
                break;
            }
            a *= kLadderStep;
        }
        if (!found) {
            r.order_holds = true;
            r.failed_at = n;
            return r;
        }
        r.a_seq.push_back(a);
        start = a * kLadderStep;
    }

    std::vector<real> mass(r.a_seq.size());
    std::vector<real> vals(r.a_seq.size());
    for (int n = 1; n <= n_max; ++n) {
        const real na = static_cast<real>(n) * r.a_seq[n - 1];
        vals[n - 1] = na;
        mass[n - 1] =
            std::ldexp(1.0L, -n) / phi2.eval(static_cast<real>(n) * na);
    }
    r.t_seq = cuts_from_masses(w, mass, "comparison_counterexample");
    r.f = assemble_ladder(w, vals, r.t_seq, 1, n_max);
    r.q2 = q_modular(phi2, w, r.f);
    for (real eps : eps_list)
        r.divergence.push_back(
            divergence_over(phi1, w, vals, r.t_seq, 1, n_max, eps, threshold));
    return r;
}

EmbeddingReport embedding_forward_check(const OrliczFunction& phi1,
                                        const OrliczFunction& phi2, const Weight& w,
                                        const StepFunction& f, real b, real u0) {
    if (f.is_zero())
        throw std::invalid_argument("embedding_forward_check: f must not vanish");
    if (!(b > 0.0) || !(u0 >= 0.0))
        throw std::invalid_argument("embedding_forward_check: need b > 0, u0 >= 0");
    if (f.domain_end() > w.domain_end())
        throw std::invalid_argument(
            "embedding_forward_check: f lives beyond the weight domain");

    EmbeddingReport r;
    const real hi = std::max(1e6L, u0 * 1e4L);
    r.order_verified =
        order_leq(phi1, phi2, b, std::max(u0, 1e-9L), 1e-9L, hi, 400,
                  u0 > 0.0 ? Regime::infinity : Regime::global)
            .pass;

    const real T = w.domain_end();
    const real nf2 = luxemburg_norm(phi2, w, f, Space::m).value;
    const StepFunction fs = rearrange(f).extended_to(T);
    const StepFunction ratio =
        halperin_level(fs, w).level.divided_by(w.fn());

    const real thr = u0 * b * nf2;
    real e0 = T;
    for (std::size_t i = 0; i < ratio.cells(); ++i)
        if (ratio.values()[i] <= thr) {
            e0 = ratio.breaks()[i];
            break;
        }
    r.e0 = e0;
    r.big_m = phi1.eval(u0) * (w.W(T) - w.W(e0)) + 1.0L;
    r.lhs = luxemburg_norm(phi1, w, f, Space::m).value;
    r.rhs = r.big_m * b * nf2;
    r.holds = r.lhs <= r.rhs * (1.0L + 1e-9L);
    return r;
}

} // namespace olk
