#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "olk/step_function.hpp"

namespace olk {

// One parsed invocation: the subcommand plus every flag it may carry.
// Unused fields keep their defaults.  The seed feeds `suite` and is
// overridden by the environment variable OLS_SEED when that is set.
struct RunConfig {
    std::string command;

    std::uint64_t seed = 42;
    int cases = 100;

    real tol = 1e-10;      // audit tolerance where a command verifies
    real horizon = 1.0;    // --T, domain end for const: weights
    std::string format = "json"; // json | csv
    std::string out;             // empty = stdout

    // operands: mini-DSL (power:p[:c], exp_n, exp_plain, const:c,
    // chi:a:b) or paths to step-function JSON files
    std::string phi, phi2, w, f, g;

    std::string space = "m";  // lambda | m
    std::string kind = "lux"; // lux | orlicz
    std::string p_mode = "convex_opt"; // via_q | convex_opt | grid_oracle | none

    real t_point = 1.0; // fundamental --t

    int budget = 16; // dualnorm candidate budget

    real k_big = 8.0; // delta2 growth constant K
    real ell = 2.0;   // delta2 dilation l
    real lo = 1e-3;
    real hi = 1e3;
    int samples = 200;

    int blocks = 2;    // pathology family width
    int depth = 8;     // cells per block
    int witnesses = 0; // ladder length, 0 = blocks + depth + 4
    real wit_lo = 1.0; // witness scan range
    real wit_hi = 1e9;
    real s = 1.5; // pathology scale-up
    real threshold = 1e3;
    int n_max = 8;                // compare ladder length
    std::vector<double> eps_list; // compare scales, default {0.1}
};

// Routes argv to one subcommand and emits its report to stdout or
// --out.  Exit 0 = success, 1 = a verdict field of the emitted report
// came back false, 2 = unparseable flags or invalid operands (unknown
// commands print usage and exit 2).
int dispatch(int argc, const char* const* argv);

} // namespace olk
