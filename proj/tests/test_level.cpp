#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "olk/level.hpp"

using namespace olk;

namespace {

// Dyadic generator as in the step-function tests: every cell mass and
// weight below is exact, so the oracle comparison can demand equality.
struct DyadicGen {
    std::mt19937_64 rng;
    explicit DyadicGen(std::uint64_t seed) : rng(seed) {}
    std::uint64_t bits(std::uint64_t n) { return rng() % n; }

    // n cells over [0, T], break steps on the 2^-6 lattice with a random
    // jitter so the f- and w-grids interleave.
    std::vector<real> lattice_breaks(real T, int n) {
        std::vector<real> br{0.0L};
        for (int i = 0; i + 1 < n; ++i) {
            std::uint64_t span = std::max<std::uint64_t>(1, std::uint64_t(64.0 * double(T) / n));
            real step = real(1 + bits(span)) / 64.0L;
            if (br.back() + step >= T) break;
            br.push_back(br.back() + step);
        }
        br.push_back(T);
        return br;
    }

    StepFunction fn(real T, int max_cells = 6) {
        std::vector<real> br = lattice_breaks(T, 1 + int(bits(max_cells)));
        std::vector<real> va(br.size() - 1);
        for (real& v : va) v = real(bits(1025)) / 256.0L;
        return StepFunction(std::move(br), std::move(va));
    }

    Weight weight(real T, int max_cells = 4) {
        std::vector<real> br = lattice_breaks(T, 1 + int(bits(max_cells)));
        real v = real(256 + bits(768)) / 256.0L;
        std::vector<real> vv;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            vv.push_back(v);
            v = std::max<real>(v - real(bits(128)) / 256.0L, 1.0L / 256.0L);
        }
        return Weight(std::move(br), std::move(vv));
    }
};

// Reference implementation: repeated local merges until the block
// ratios strictly decrease.  PAVA fixpoints are unique, so this must
// coincide with the single-pass stack in halperin_level, but the
// control flow is entirely different.
struct RefBlock {
    std::size_t lo, hi;
    real F, W;
};

LevelDecomposition reference_level(const StepFunction& f, const Weight& w) {
    StepFunction fe = f.extended_to(w.domain_end());
    std::vector<real> grid = merged_grid(fe, w.fn());
    std::size_t n = grid.size() - 1;
    std::vector<real> fv(n), wv(n), dt(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = fe.value_at(grid[i]);
        wv[i] = w.fn().value_at(grid[i]);
        dt[i] = grid[i + 1] - grid[i];
    }
    std::vector<RefBlock> blocks;
    for (std::size_t i = 0; i < n; ++i)
        blocks.push_back({i, i + 1, fv[i] * dt[i], wv[i] * dt[i]});
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
            if (blocks[i].F * blocks[i + 1].W <= blocks[i + 1].F * blocks[i].W) {
                blocks[i].hi = blocks[i + 1].hi;
                blocks[i].F += blocks[i + 1].F;
                blocks[i].W += blocks[i + 1].W;
                blocks.erase(blocks.begin() + long(i) + 1);
                merged = true;
                break;
            }
        }
    }
    LevelDecomposition dec;
    dec.source = fe;
    dec.weight = w.fn();
    std::vector<real> lv(n), iw(n);
    for (const RefBlock& b : blocks) {
        bool multi = b.hi - b.lo > 1;
        real ratio = b.F == 0.0L ? 0.0L : b.F / b.W;
        if (multi && b.F > 0.0L)
            dec.intervals.push_back({grid[b.lo], grid[b.hi], ratio});
        for (std::size_t i = b.lo; i < b.hi; ++i) {
            if (!multi) {
                lv[i] = fv[i];
                iw[i] = wv[i];
            } else if (b.F == 0.0L) {
                lv[i] = 0.0L;
                iw[i] = wv[i];
            } else {
                lv[i] = ratio * wv[i];
                iw[i] = fv[i] * (b.W / b.F);
            }
        }
    }
    dec.level = StepFunction(grid, std::move(lv));
    dec.inverse_weight = StepFunction(std::move(grid), std::move(iw));
    return dec;
}

} // namespace

TEST_CASE("constant source over a two-step weight: frozen decomposition") {
    Weight w({0.0L, 1.0L, 2.0L}, {2.0L, 1.0L});
    StepFunction f = StepFunction::constant(1.0L, 2.0L);
    LevelDecomposition dec = halperin_level(f, w);

    REQUIRE(dec.intervals.size() == 1);
    CHECK(dec.intervals[0].a == 0.0L);
    CHECK(dec.intervals[0].b == 2.0L);
    CHECK(dec.intervals[0].ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-18));

    CHECK(dec.level.value_at(0.5L) == doctest::Approx(4.0 / 3.0).epsilon(1e-18));
    CHECK(dec.level.value_at(1.5L) == doctest::Approx(2.0 / 3.0).epsilon(1e-18));
    CHECK(integrate(dec.level) == doctest::Approx(2.0).epsilon(1e-18));

    CHECK(dec.inverse_weight.value_at(0.5L) == 1.5L);
    CHECK(dec.inverse_weight.value_at(1.5L) == 1.5L);
}

TEST_CASE("strictly decreasing ratio: no intervals, identity decomposition") {
    Weight w({0.0L, 1.0L, 2.0L}, {2.0L, 1.0L});
    StepFunction f({0.0L, 1.0L, 2.0L}, {3.0L, 1.0L});
    LevelDecomposition dec = halperin_level(f, w);
    CHECK(dec.intervals.empty());
    CHECK(dec.level == f);
    CHECK(dec.inverse_weight == w.fn());
}

TEST_CASE("valley merges into the tail: frozen slopes and deformed weight") {
    Weight w(StepFunction::constant(1.0L, 3.0L));
    StepFunction f({0.0L, 1.0L, 2.0L, 3.0L}, {1.0L, 0.0L, 1.0L});

    StepFunction s = sinnamon_level(f, w);
    CHECK(s.value_at(0.5L) == 1.0L);
    CHECK(s.value_at(1.5L) == 0.5L);
    CHECK(s.value_at(2.5L) == 0.5L);

    LevelDecomposition dec = halperin_level(f, w);
    REQUIRE(dec.intervals.size() == 1);
    CHECK(dec.intervals[0].a == 1.0L);
    CHECK(dec.intervals[0].b == 3.0L);
    CHECK(dec.intervals[0].ratio == 0.5L);
    CHECK(dec.level.value_at(0.5L) == 1.0L);
    CHECK(dec.level.value_at(2.0L) == 0.5L);

    CHECK(dec.inverse_weight.value_at(0.5L) == 1.0L);
    CHECK(dec.inverse_weight.value_at(1.5L) == 0.0L);
    CHECK(dec.inverse_weight.value_at(2.5L) == 2.0L);
    // The deformed weight carries the block's full weight mass.
    CHECK(integrate(dec.inverse_weight, 1.0L, 3.0L) == 2.0L);
}

TEST_CASE("zero tail cells keep the original weight") {
    Weight w({0.0L, 1.0L, 2.0L, 3.0L}, {2.0L, 1.5L, 1.0L});
    StepFunction f = StepFunction::indicator(1.0L, 0.0L, 1.0L, 3.0L);
    LevelDecomposition dec = halperin_level(f, w);
    CHECK(dec.level == f);
    CHECK(dec.inverse_weight == w.fn());
    CHECK(dec.intervals.empty()); // the zero block deforms nothing
}

TEST_CASE("domain and monotonicity guards") {
    Weight w(StepFunction::constant(1.0L, 2.0L));
    CHECK_THROWS_AS(halperin_level(StepFunction::constant(1.0L, 3.0L), w),
                    std::invalid_argument);
    CHECK_THROWS_AS(sinnamon_level(StepFunction::constant(1.0L, 3.0L), w),
                    std::invalid_argument);
    StepFunction inc({0.0L, 1.0L, 2.0L}, {1.0L, 2.0L});
    CHECK_THROWS_AS(inverse_level_weight(inc, w), std::domain_error);
}

TEST_CASE("level of a sorted source with nonincreasing ratio is the source") {
    DyadicGen gen(0xB001);
    for (int rep = 0; rep < 30; ++rep) {
        Weight w = gen.weight(2.0L);
        StepFunction g = rearrange(gen.fn(2.0L));
        StepFunction f = g.times(w.fn()); // f/w = g* nonincreasing
        LevelDecomposition dec = halperin_level(f, w);
        CHECK(dec.level == f);
    }
}

TEST_CASE("level axioms on random instances") {
    DyadicGen gen(0xB002);
    for (int rep = 0; rep < 60; ++rep) {
        Weight w = gen.weight(2.0L);
        StepFunction f = gen.fn(2.0L);
        LevelDecomposition dec = halperin_level(f, w);

        // Total mass is preserved ...
        CHECK(integrate(dec.level) ==
              doctest::Approx(double(integrate(f))).epsilon(1e-15));
        // ... prefixes only grow ...
        std::vector<real> grid = merged_grid(dec.level, f.extended_to(2.0L));
        real pf = 0.0L, pl = 0.0L;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            real dt = grid[i + 1] - grid[i];
            pf += f.value_at(grid[i]) * dt;
            pl += dec.level.value_at(grid[i]) * dt;
            CHECK(pl >= pf - 1e-12L);
        }
        // ... and level/w is nonincreasing (up to one requotient ulp:
        // (ratio*w)/w rounds twice per cell).
        StepFunction lw = dec.level.divided_by(w.fn());
        real slack = 1e-16L * (1.0L + lw.max_value());
        for (std::size_t i = 0; i + 1 < lw.values().size(); ++i)
            CHECK(lw.values()[i] >= lw.values()[i + 1] - slack);

        // Idempotence: a second pass changes nothing.
        LevelDecomposition dec2 = halperin_level(dec.level, w);
        std::vector<real> g2 = merged_grid(dec2.level, dec.level);
        for (std::size_t i = 0; i + 1 < g2.size(); ++i)
            CHECK(dec2.level.value_at(g2[i]) ==
                  doctest::Approx(double(dec.level.value_at(g2[i]))).epsilon(1e-15));
    }
}

TEST_CASE("stack construction matches the local-merge fixpoint exactly") {
    DyadicGen gen(0xB003);
    for (int rep = 0; rep < 100; ++rep) {
        Weight w = gen.weight(2.0L);
        StepFunction f = gen.fn(2.0L);
        LevelDecomposition got = halperin_level(f, w);
        LevelDecomposition ref = reference_level(f, w);
        CHECK(got.level == ref.level);
        CHECK(got.inverse_weight == ref.inverse_weight);
        REQUIRE(got.intervals.size() == ref.intervals.size());
        for (std::size_t i = 0; i < got.intervals.size(); ++i) {
            CHECK(got.intervals[i].a == ref.intervals[i].a);
            CHECK(got.intervals[i].b == ref.intervals[i].b);
            CHECK(got.intervals[i].ratio == ref.intervals[i].ratio);
        }
    }
}

TEST_CASE("two independent level routes agree") {
    DyadicGen gen(0xB004);
    for (int rep = 0; rep < 60; ++rep) {
        Weight w = gen.weight(2.0L);
        StepFunction f = gen.fn(2.0L);
        LevelCrosscheck cc = crosscheck_level(f, w);
        CHECK(cc.ok);
        CHECK(cc.max_deviation <= 1e-10L);
    }
}

TEST_CASE("sinnamon level on an analytic staircase") {
    // f/w jumps up mid-domain; the hull bridges the first two cells.
    Weight w(StepFunction::constant(2.0L, 2.0L));
    StepFunction f({0.0L, 1.0L, 2.0L}, {1.0L, 3.0L});
    StepFunction s = sinnamon_level(f.divided_by(w.fn()), w);
    // Nodes (W, int f): (0,0), (2,1), (4,4) -> single hull chord of
    // slope 1 from (0,0) to (4,4).
    CHECK(s.value_at(0.5L) == 1.0L);
    CHECK(s.value_at(1.5L) == 1.0L);
    // Against halperin on the same data.
    LevelDecomposition dec = halperin_level(f, w);
    CHECK(dec.level.value_at(0.5L) == 2.0L); // ratio 1 * w
    REQUIRE(dec.intervals.size() == 1);
    CHECK(dec.intervals[0].ratio == 1.0L);
}
