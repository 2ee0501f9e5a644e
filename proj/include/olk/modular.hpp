#pragma once

#include <cstddef>
#include <vector>

#include "olk/level.hpp"
#include "olk/orlicz.hpp"
#include "olk/step_function.hpp"

namespace olk {

// Weighted point-mass view of a modular: eval_scaled(phi, s) is
// sum_i phi(s * args[i]) * masses[i], saturating at +inf.
struct ModularProfile {
    std::vector<real> args;
    std::vector<real> masses;
    real eval_scaled(const ExtOrliczFunction& phi, real s) const;
    real total_mass() const;
    real max_arg() const;
};

// rho_{phi,w}(f) = int phi(f*) w dt.
ModularProfile rho_profile(const Weight& w, const StepFunction& f);
real rho_modular(const ExtOrliczFunction& phi, const Weight& w, const StepFunction& f);
inline real rho_modular(const OrliczFunction& phi, const Weight& w, const StepFunction& f) {
    return rho_modular(phi.ext(), w, f);
}

// Q_{phi,w}(f) = int phi(f0/w) w dt with f0 the level of f* relative to
// w.  Equals int phi(f*/v) v dt for the deformed weight v = w^{f*}; both
// routes are computed and cross-checked on every call.
ModularProfile q_profile(const Weight& w, const StepFunction& f);
real q_modular(const ExtOrliczFunction& phi, const Weight& w, const StepFunction& f);
inline real q_modular(const OrliczFunction& phi, const Weight& w, const StepFunction& f) {
    return q_modular(phi.ext(), w, f);
}

// P_{phi,w}(f) = inf over nonincreasing v with int_0^t v <= int_0^t w
// of int phi(f*/v) v dt.
enum class PMode {
    via_q,      // P = Q; valid for N-functions, rejected otherwise
    convex_opt, // projected subgradient descent on the cell values of v
    grid_oracle // exhaustive lattice refinement (small grids only)
};

struct PResult {
    real value;
    StepFunction v; // the minimizing weight found
    PMode mode;
};

PResult p_modular(const OrliczFunction& phi, const Weight& w,
                  const StepFunction& f, PMode mode);
// Carriers that reach +inf (bounded conjugates) or sit flat near zero
// never pass the finite wrapper; they descend through this overload.
// via_q is rejected here: its P = Q shortcut is an N-function fact.
PResult p_modular(const ExtOrliczFunction& phi, const Weight& w,
                  const StepFunction& f, PMode mode);

// Finiteness threshold inf{theta > 0 : Q(f/theta) < +inf}; zero when
// phi is finite everywhere.
real theta_bar(const ExtOrliczFunction& phi, const Weight& w, const StepFunction& f);

enum class Space { lambda, m };

struct NormResult {
    real value;
    real modular_at_value; // modular(f/value) <= 1, the defining certificate
    int iterations;
};

// Luxemburg norm inf{eps > 0 : modular(f/eps) <= 1}, where the modular
// is rho (lambda space) or Q (m space).  Bisection to 1e-10.
NormResult luxemburg_norm(const ExtOrliczFunction& phi, const Weight& w,
                          const StepFunction& f, Space space);
inline NormResult luxemburg_norm(const OrliczFunction& phi, const Weight& w,
                                 const StepFunction& f, Space space) {
    return luxemburg_norm(phi.ext(), w, f, space);
}

struct KInterval {
    real k_star, k_double_star;
    bool unbounded_above; // k_double_star capped by the probe horizon
};

enum class OrliczNormKind {
    attained, // inf_k (1 + modular(k f))/k attained on [k*, k**]
    limit     // derivative never reaches 1; value is the k -> inf limit
};

struct OrliczNormResult {
    real value;
    OrliczNormKind kind;
    KInterval k;             // meaningful for kind == attained
    real modular_at_witness; // modular(k* f), replay certificate
};

// Orlicz (Amemiya) norm inf_k (1 + modular(k f))/k.  The minimizer is
// located through the Young-equality derivative
//   D(k) = sum phi^*(phi'(k u_i)) m_i,
// nondecreasing in k; [k*, k**] is the set where D crosses 1.  When
// phi' is bounded and D stays below 1, the infimum is the limit
// slope_at_infinity(phi) * int f* w (lambda) resp. * int f0 (m space).
OrliczNormResult orlicz_norm(const OrliczFunction& phi, const Weight& w,
                             const StepFunction& f, Space space);

struct FundamentalResult {
    real t;
    real lambda_lux, lambda_orlicz;
    real m_lux, m_orlicz;
};

// Norms of chi_{[0,t)} in all four (space, norm) combinations.  The two
// Luxemburg values have closed forms through phi^{-1} and are asserted
// against them internally.
FundamentalResult fundamental(const OrliczFunction& phi, const Weight& w, real t);

} // namespace olk
