#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "olk/step_function.hpp"

namespace olk {

// Dyadic instance generator shared by the property suite and the CLI.
// Breakpoints land on the 1/64 lattice and values on the 1/256 lattice,
// so cell products and prefix sums are exact in extended precision and
// identity-style invariants can be asserted with equality instead of
// tolerance.
struct DyadicGen {
    std::mt19937_64 rng;
    explicit DyadicGen(std::uint64_t seed) : rng(seed) {}
    std::uint64_t bits(std::uint64_t n) { return rng() % n; }

    // n-ish cells over [0, T); always at least one.
    std::vector<real> lattice_breaks(real T, int n);

    // Nonnegative step function, values in {0, ..., 512}/256.
    StepFunction fn(real T, int max_cells = 4);
    StepFunction nonzero_fn(real T, int max_cells = 4);

    // Nonincreasing positive weight, values in [1/256, 4).
    Weight weight(real T, int max_cells = 3);
};

// Stateless seed mixer (splitmix64 finalizer); decorrelates per-check
// streams drawn from one user-facing seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace olk
