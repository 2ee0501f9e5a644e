#pragma once

#include <optional>
#include <vector>

#include "olk/modular.hpp"

namespace olk {

// Growth-gap witness ladder u_1 < u_2 < ... with
//   phi((1 + 1/n) u_n) > 2^n phi(u_n)  for each n;
// such a ladder exists exactly when phi fails the doubling growth
// condition.  A failed search is a value, not an error: failed_at is
// the first n with no witness inside [lo, hi].
struct WitnessSequence {
    std::vector<real> u;
    bool complete = false;
    int failed_at = -1;
};

WitnessSequence delta2_witness_sequence(const OrliczFunction& phi, int n_max,
                                        real lo = 1.0, real hi = 1e9);

// Disjoint family of blocks
//   f_k = sum_{n = n_k+1}^{n_k+depth} u_n w chi_[t_n, t_{n-1})
// translated to pairwise disjoint supports.  The cut points satisfy
// int_{t_n}^{t_{n-1}} w = 2^{-n} / phi(u_n) and exhaust to t_N = 0.
//
// Blocks are stored as their own nonincreasing rearrangement: cell n
// carries value u_n w at width t_{n-1} - t_n, widths accumulated
// narrow-to-wide so the deep cells (thousands of orders of magnitude
// narrower than the shallow ones at depth ~40) keep distinct
// breakpoints.  Neither the translated breakpoints off + t_n nor the
// zero gap under the deepest cut survive rounding at that depth, and
// everything verified about the family (Q, P, Luxemburg norms) is
// rearrangement-invariant anyway.  The exact cut geometry lives in
// t_seq, and the offsets witness the disjoint placement: block k
// occupies [offsets[k], offsets[k] + t_{n_k}).
struct PathologyFamily {
    OrliczFunction phi;
    Weight w;
    std::vector<real> u_seq; // u_seq[i] = u_{i+1}
    std::vector<real> t_seq; // t_seq[n] = t_n, t_0 > t_1 > ... > t_N = 0
    int k_count = 0;
    int depth = 0;
    std::vector<int> n_seq;    // n_k per block, strictly increasing
    std::vector<real> offsets; // offsets[0] = t_0, offsets[k+1] = offsets[k] + t_{n_k}
    std::vector<StepFunction> f_blocks;
};

// Asserted at construction: the witness inequality for every index the
// family retains, the cut-point identity per n, support disjointness,
// and Q(f_k) <= 2^{-k} + 1e-10.  Throws std::domain_error when the cut
// masses exceed the weight's total (reporting the mass a feasible
// domain needs) and std::invalid_argument on a non-increasing u_seq or
// one too short for the greedy block anchors.
PathologyFamily build_disjoint_family(const OrliczFunction& phi, const Weight& w,
                                      const std::vector<real>& u_seq,
                                      int k_count, int depth);

// Ratio/mass profile of sum_k coeffs[k] f_k (coeffs empty = all ones):
// args are the distinct values coeffs[k] u_n, masses the matching
// int w over the cut cells.  Exact at any depth.  Constant weights
// only: with w constant the merged decreasing ratio ladder is its own
// Halperin level, which is what makes the profile equal to the
// Q-profile of the materialized sum.
ModularProfile family_profile(const PathologyFamily& fam,
                              const std::vector<real>& coeffs = {});

// The same sum materialized as a step function (its decreasing
// rearrangement), when the prefix sums of cell widths stay strictly
// increasing in floating point; nullopt once some deep cell falls
// below one ulp of the cells preceding it.
std::optional<StepFunction> family_sum(const PathologyFamily& fam,
                                       const std::vector<real>& coeffs = {});

// Divergence evidence for one scaled block: term_j = phi(s u_n) int w
// over the j-th retained cell, partials their running sums.
struct BlockDivergence {
    std::vector<real> terms;
    std::vector<real> partials;
    int terms_to_exceed = -1;    // first count whose partial passes the threshold
    bool trend_positive = false; // terms nondecreasing, somewhere increasing,
                                 // across the last quartile
};

struct FamilyReport {
    std::vector<real> q_blocks;              // Q(f_k), exact machinery
    std::vector<BlockDivergence> divergence; // partials of Q(s f_k)
    real sum_norm = 0.0;                     // ||sum_k f_k||_M (Luxemburg)
    // Certified allowance for the depth truncation: 1 - max_k ||f_k||_M.
    // The infinite-tail sum has norm exactly 1; the truncated sum is
    // squeezed between the largest block norm and 1, so the window
    // below is an identity the computation must land in rather than a
    // tolerance knob.  (The dropped modular tail q_mass_dropped =
    // sum_k 2^{-(n_k+depth)} is far smaller than the norm deficit: a
    // Luxemburg crossing is governed by the deepest retained witness,
    // not by the dropped mass.)
    real tol_trunc = 0.0;
    real q_mass_dropped = 0.0;
    bool norm_in_window = false; // sum_norm in [1 - tol_trunc, 1 + 1e-8]
};

// s >= 1; s = 1 is the boundary diagnostic (partials stay under
// 2^{-n_k}, no trend), s > 1 the divergence regime.
FamilyReport verify_family(const PathologyFamily& fam, real s, real threshold);

struct LinfReport {
    int k0 = 0;           // block carrying the maximal coefficient
    real upper_lhs = 0.0; // ||Tx||_M
    real upper_rhs = 0.0; // ||x||_inf ||sum_k f_k||_M
    bool upper_holds = false;
    BlockDivergence lower;       // Q(|x(k0)| f_{k0} / (lambda ||x||_inf)) partials
    bool lower_evidence = false; // partials exceed 1 within depth
};

// Tx = sum_k |x(k)| f_k; checks ||Tx|| <= ||x||_inf ||sum f_k|| and the
// lower-bound divergence at the maximal block.  x is truncated to
// k_count entries; lambda in (0,1).
LinfReport linf_embedding_check(const PathologyFamily& fam, std::vector<real> x,
                                real lambda);

struct ComparisonReport {
    bool order_holds = false; // no witness ladder inside the range
    int failed_at = -1;       // first n without a witness when order_holds
    std::vector<real> a_seq;  // witnesses phi1(a_n) > phi2(2^n n^2 a_n)
    std::vector<real> t_seq;
    StepFunction f; // sum_n n a_n w chi_[t_n, t_{n-1}); f = f* = level
    real q2 = 0.0;  // Q_{phi2,w}(f), strictly below 1
    std::vector<real> eps_list;
    std::vector<BlockDivergence> divergence; // Q_{phi1,w}(eps f) partials
};

// Builds the one-sided comparison counterexample, or reports that the
// order phi1 <= phi2(b .) plausibly holds (witness ladder broke off).
ComparisonReport comparison_counterexample(const OrliczFunction& phi1,
                                           const OrliczFunction& phi2,
                                           const Weight& w, int n_max,
                                           const std::vector<real>& eps_list,
                                           real threshold = 1e3);

struct EmbeddingReport {
    real lhs = 0.0;   // ||f||_{M, phi1}
    real rhs = 0.0;   // M b ||f||_{M, phi2}
    real big_m = 0.0; // phi1(u0) (W(T) - W(e0)) + 1
    real e0 = 0.0;    // left end of the tail set {level(f*) <= u0 b ||f|| w}
    bool order_verified = false; // phi1(u) <= phi2(b u) sampled past u0
    bool holds = false;
};

// Forward inclusion constant: when phi1(u) <= phi2(b u) for u >= u0,
// the M-norms satisfy ||f||_{phi1} <= M b ||f||_{phi2} with M read off
// the set where the level ratio drops under u0 b ||f||_{phi2}.
EmbeddingReport embedding_forward_check(const OrliczFunction& phi1,
                                        const OrliczFunction& phi2,
                                        const Weight& w, const StepFunction& f,
                                        real b, real u0);

} // namespace olk
