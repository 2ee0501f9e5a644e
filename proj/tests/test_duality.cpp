#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "olk/duality.hpp"

using namespace olk;

namespace {

// Dyadic generator family shared with the modular tests.
struct DyadicGen {
    std::mt19937_64 rng;
    explicit DyadicGen(std::uint64_t seed) : rng(seed) {}
    std::uint64_t bits(std::uint64_t n) { return rng() % n; }

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

    StepFunction fn(real T, int max_cells = 4) {
        std::vector<real> br = lattice_breaks(T, 1 + int(bits(max_cells)));
        std::vector<real> va(br.size() - 1);
        for (real& v : va) v = real(bits(513)) / 256.0L;
        return StepFunction(std::move(br), std::move(va));
    }

    StepFunction nonzero_fn(real T, int max_cells = 4) {
        for (;;) {
            StepFunction f = fn(T, max_cells);
            if (!f.is_zero()) return f;
        }
    }

    Weight weight(real T, int max_cells = 3) {
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

const Weight unit01{std::vector<real>{0.0L, 1.0L}, std::vector<real>{1.0L}};

} // namespace

TEST_CASE("holder audit is tight on the conjugate pair") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction chi = StepFunction::constant(1.0, 1.0);

    const HolderReport r = holder_audit(p2, unit01, chi, chi);
    CHECK(r.pairing == 1.0L);
    CHECK(r.pairing_star == 1.0L);
    // lux 1 * orlicz 1 and orlicz 2 * lux 1/2: both products collapse to
    // the pairing itself, so the chain is an equality end to end.
    CHECK(std::abs(r.bound_lux_orlicz - 1.0L) <= 1e-9L);
    CHECK(std::abs(r.bound_orlicz_lux - 1.0L) <= 1e-9L);
    CHECK(r.holds);
}

TEST_CASE("holder audit keeps slack on a short indicator") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction chi = StepFunction::constant(1.0, 1.0);
    const StepFunction half = StepFunction::indicator(1.0, 0.0, 0.5, 1.0);

    const HolderReport r = holder_audit(p2, unit01, chi, half);
    CHECK(r.pairing == 0.5L);
    CHECK(r.pairing_star == 0.5L);
    // (1 + k^2/8)/k bottoms at k = sqrt(8), giving 1/sqrt(2); the lux
    // route lands on the same value by homogeneity.
    const real root_half = std::sqrt(0.5L);
    CHECK(std::abs(r.bound_lux_orlicz - root_half) <= 1e-9L);
    CHECK(std::abs(r.bound_orlicz_lux - root_half) <= 1e-9L);
    CHECK(r.holds);
}

TEST_CASE("holder chain holds on random pairs") {
    const OrliczFunction zoo[] = {
        OrliczFunction::power(1.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::power(3.0L),
        OrliczFunction::exp_n(),
    };
    std::uint64_t seed = 0xD001;
    for (const OrliczFunction& phi : zoo) {
        DyadicGen gen(seed++);
        for (int i = 0; i < 250; ++i) {
            const real T = 1.0L + real(gen.bits(2));
            const Weight w = gen.weight(T);
            const StepFunction f = gen.nonzero_fn(T);
            const StepFunction g = gen.nonzero_fn(T);
            const HolderReport r = holder_audit(phi, w, f, g);
            CHECK(r.holds);
            CHECK(r.pairing <= r.pairing_star + 1e-10L * (1.0L + r.pairing_star));
        }
    }
}

TEST_CASE("dual norm oracle recovers the flat witness") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction chi = StepFunction::constant(1.0, 1.0);

    const DualNormCertificate c = dual_norm_oracle(p2, unit01, chi, 4);
    CHECK(std::abs(c.value - 2.0L) <= 1e-9L);
    CHECK(std::abs(c.witness.value_at(0.25L) - 2.0L) <= 1e-9L);
    CHECK(std::abs(c.witness.value_at(0.75L) - 2.0L) <= 1e-9L);
    CHECK(std::abs(c.witness_modular - 1.0L) <= 1e-9L);
    CHECK(c.candidates >= 4);
}

TEST_CASE("dual norm oracle brackets the orlicz norm") {
    const OrliczFunction zoo[] = {
        OrliczFunction::power(1.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::power(3.0L),
        OrliczFunction::exp_n(),
    };
    std::uint64_t seed = 0xD101;
    for (const OrliczFunction& phi : zoo) {
        DyadicGen gen(seed++);
        for (int i = 0; i < 6; ++i) {
            const real T = 1.0L + real(gen.bits(2));
            const Weight w = gen.weight(T);
            const StepFunction f = gen.nonzero_fn(T);
            const real norm = orlicz_norm(phi, w, f, Space::m).value;
            const DualNormCertificate c = dual_norm_oracle(phi, w, f, 6);
            CHECK(c.value <= norm + 1e-8L * (1.0L + norm));
            // The Young-equality candidate lands the sup for smooth
            // derivatives; the deficit is pure arithmetic noise.
            CHECK(norm - c.value <= 1e-4L * (1.0L + norm));
            CHECK(c.witness_modular <= 1.0L + 1e-9L);
        }
    }
}

TEST_CASE("dual norm oracle on zero input") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const DualNormCertificate c =
        dual_norm_oracle(p2, unit01, StepFunction::zero(1.0), 3);
    CHECK(c.value == 0.0L);
    CHECK(c.candidates == 0);
}

TEST_CASE("functional norm frozen values") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction chi = StepFunction::constant(1.0, 1.0);

    // P(chi/l) = 1/(4 l^2): the ball edge sits at l = 1/2.
    CHECK(std::abs(functional_norm(p2, unit01, {chi, 0.0L, {}}) - 0.5L) <= 1e-10L);

    // 1/(4 l^2) + 1/(2 l) = 1 is 4 l^2 = 1 + 2 l, root (1 + sqrt 5)/4.
    const real golden = 0.25L * (1.0L + std::sqrt(5.0L));
    CHECK(std::abs(functional_norm(p2, unit01, {chi, 0.5L, {}}) - golden) <= 1e-9L);

    // Pure singular part: the norm is s_norm itself.
    CHECK(std::abs(functional_norm(p2, unit01, {StepFunction::zero(1.0), 1.0L, {}}) -
                   1.0L) <= 1e-12L);
    CHECK(functional_norm(p2, unit01, {StepFunction::zero(1.0), 0.0L, {}}) == 0.0L);

    CHECK_THROWS_AS(functional_norm(p2, unit01, {chi, -0.1L, {}}),
                    std::invalid_argument);
}

TEST_CASE("functional norm with no singular part is the M luxemburg norm") {
    const OrliczFunction zoo[] = {
        OrliczFunction::power(1.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::exp_n(),
    };
    std::uint64_t seed = 0xD201;
    for (const OrliczFunction& phi : zoo) {
        DyadicGen gen(seed++);
        for (int i = 0; i < 10; ++i) {
            const real T = 1.0L + real(gen.bits(2));
            const Weight w = gen.weight(T);
            const StepFunction h = gen.nonzero_fn(T);
            const real a = functional_norm(phi, w, {h, 0.0L, {}});
            const real b =
                luxemburg_norm(phi.complementary(), w, h, Space::m).value;
            CHECK(std::abs(a - b) <= 1e-8L * (1.0L + b));
        }
    }
}

TEST_CASE("attainment check accepts the constructed pair") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction f = StepFunction::constant(0.5, 1.0); // ||f||^0 = 1
    const StepFunction h = StepFunction::constant(1.0, 1.0);

    const AttainmentReport r = attainment_check(p2, unit01, f, h, 0.0L, 0.0L, 2.0L);
    CHECK(std::abs(r.norm_functional - 0.5L) <= 1e-10L);
    CHECK(r.residual_i <= 1e-8L);
    CHECK(r.residual_ii <= 1e-12L);
    CHECK(r.residual_iii <= 1e-8L);
    CHECK(r.alignment <= 1e-12L);
    CHECK(r.attained);
}

TEST_CASE("attainment check flags a singular-part deficit") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction f = StepFunction::constant(0.5, 1.0);
    const StepFunction h = StepFunction::constant(1.0, 1.0);

    // S claims norm 0.3 but only delivers 0.2 at k f.
    const AttainmentReport r = attainment_check(p2, unit01, f, h, 0.3L, 0.2L, 2.0L);
    CHECK_FALSE(r.attained);
    CHECK(r.residual_ii > 0.05L);
}

TEST_CASE("attainment check flags a support mismatch") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction f = StepFunction::constant(0.5, 1.0);
    const StepFunction h = StepFunction::indicator(1.0, 0.0, 0.5, 1.0);

    const AttainmentReport r = attainment_check(p2, unit01, f, h, 0.0L, 0.0L, 2.0L);
    CHECK_FALSE(r.attained);
    // Norm equality (i) still holds; the pairing identity (iii) cannot:
    // k int (h*)0 f* / ||F|| = sqrt 2 against rho + P = 2.
    CHECK(r.residual_i <= 1e-8L);
    CHECK(r.residual_iii > 0.1L);
}

TEST_CASE("attainment check flags a norm that is not attained") {
    // Bounded-slope carrier: the conjugate caps at v_inf = 3, P(h/l)
    // jumps from +inf to 0.4 at l = 4/3, and the ball edge is never an
    // equality.  Norm attainment fails through condition (i).
    const OrliczFunction pw = OrliczFunction::piecewise({0.0L, 1.0L}, {1.0L, 3.0L});
    const Weight w{std::vector<real>{0.0L, 0.75L}, std::vector<real>{1.0L}};
    const StepFunction f = StepFunction::constant(4.0L / 7.0L, 0.75L);
    const StepFunction h = StepFunction::indicator(4.0L, 0.0L, 0.2L, 0.75L);

    const AttainmentReport r =
        attainment_check(pw, w, f, h, 0.0L, 0.0L, 1.75L);
    CHECK_FALSE(r.attained);
    CHECK(std::abs(r.norm_functional - 4.0L / 3.0L) <= 1e-9L);
    CHECK(std::abs(r.residual_i - 0.6L) <= 1e-6L);
    CHECK(r.residual_ii == 0.0L);
}

TEST_CASE("attainment check rejects out-of-contract inputs") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction f = StepFunction::constant(0.5, 1.0);
    const StepFunction h = StepFunction::constant(1.0, 1.0);

    // ||chi||^0 = 2, not 1.
    CHECK_THROWS_AS(attainment_check(p2, unit01, StepFunction::constant(1.0, 1.0),
                                     h, 0.0L, 0.0L, 2.0L),
                    std::invalid_argument);
    // k = 1.5 sits outside K(f) = {2}.
    CHECK_THROWS_AS(attainment_check(p2, unit01, f, h, 0.0L, 0.0L, 1.5L),
                    std::invalid_argument);
    // Zero functional.
    CHECK_THROWS_AS(attainment_check(p2, unit01, f, StepFunction::zero(1.0),
                                     0.0L, 0.0L, 2.0L),
                    std::invalid_argument);
}

TEST_CASE("extension gap frozen values") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    const StepFunction h = StepFunction::constant(2.0, 1.0); // ||h||_M = 1

    SUBCASE("singular excess opens a gap") {
        const ExtensionGapReport r = extension_gap(p2, unit01, h, 0.2L);
        CHECK(r.gap_present);
        CHECK_FALSE(r.unbounded);
        CHECK(std::abs(r.g_at_1 - 1.2L) <= 1e-10L);
        // 1/l^2 + 0.2/l = 1 has root (0.2 + sqrt 4.04)/2.
        const real l0 = 0.1L + 0.5L * std::sqrt(4.04L);
        CHECK(std::abs(r.lambda0 - l0) <= 1e-8L);
    }
    SUBCASE("no singular part, no gap") {
        const ExtensionGapReport r = extension_gap(p2, unit01, h, 0.0L);
        CHECK_FALSE(r.gap_present);
        CHECK(std::abs(r.g_at_1 - 1.0L) <= 1e-12L);
        CHECK(r.lambda0 == 1.0L);
    }
    SUBCASE("unnormalized h is rejected") {
        CHECK_THROWS_AS(
            extension_gap(p2, unit01, StepFunction::constant(1.0, 1.0), 0.2L),
            std::invalid_argument);
    }
}

TEST_CASE("extension gap across the capped-conjugate family") {
    // conj caps at 3 with value 2, so h = 3 chi_[0,m) has M norm exactly
    // 1 for every m <= 1/2 while P(h) = 2m scans the modular range.
    const OrliczFunction pw = OrliczFunction::piecewise({0.0L, 1.0L}, {1.0L, 3.0L});
    const auto h_of = [](real m) {
        return StepFunction::indicator(3.0L, 0.0L, m, 1.0L);
    };

    const ExtensionGapReport a = extension_gap(pw, unit01, h_of(0.3L), 0.4L);
    CHECK_FALSE(a.gap_present); // P + s = 1 exactly: extensions split for free
    CHECK(std::abs(a.g_at_1 - 1.0L) <= 1e-12L);

    const ExtensionGapReport b = extension_gap(pw, unit01, h_of(0.4L), 0.0L);
    CHECK_FALSE(b.gap_present);
    CHECK(std::abs(b.g_at_1 - 0.8L) <= 1e-12L);

    const ExtensionGapReport c = extension_gap(pw, unit01, h_of(0.4L), 0.4L);
    CHECK(c.gap_present);
    CHECK(std::abs(c.g_at_1 - 1.2L) <= 1e-12L);
    CHECK(std::abs(c.lambda0 - 8.0L / 7.0L) <= 1e-8L);

    const ExtensionGapReport d = extension_gap(pw, unit01, h_of(0.5L), 0.2L);
    CHECK(d.gap_present);
    CHECK(std::abs(d.g_at_1 - 1.2L) <= 1e-12L);
    CHECK(std::abs(d.lambda0 - 17.0L / 15.0L) <= 1e-8L);
}

TEST_CASE("extension gap dichotomy on random normalized parts") {
    const OrliczFunction p2 = OrliczFunction::power(2.0);
    DyadicGen gen(0xD301);
    for (int i = 0; i < 12; ++i) {
        const real T = 1.0L + real(gen.bits(2));
        const Weight w = gen.weight(T);
        StepFunction h = gen.nonzero_fn(T);
        h = h.scaled(1.0L / luxemburg_norm(p2.complementary(), w, h, Space::m).value);
        const real s = real(gen.bits(5)) / 10.0L;

        const ExtensionGapReport r = extension_gap(p2, w, h, s);
        CHECK(r.gap_present == (r.g_at_1 > 1.0L));
        if (r.gap_present && !r.unbounded) {
            CHECK(r.lambda0 > 1.0L);
            // Replay the certificate: the excess really does persist at
            // lambda0 and dies just past it.
            const auto g = [&](real lam) {
                return p_modular(p2.complementary(), w, h.scaled(1.0L / lam),
                                 PMode::convex_opt)
                           .value +
                       s / lam;
            };
            CHECK(g(r.lambda0) > 1.0L - 1e-9L);
            CHECK(g(r.lambda0 * 1.01L) <= 1.0L + 1e-9L);
        }
    }
}

TEST_CASE("singular oracle table lookup") {
    const DualFunctional F{StepFunction::constant(1.0, 1.0),
                           0.5L,
                           {{2.0L, 0.3L}, {4.0L, 0.7L}}};
    REQUIRE(F.s_at(2.0L).has_value());
    CHECK(*F.s_at(2.0L) == 0.3L);
    CHECK(*F.s_at(4.0L) == 0.7L);
    CHECK_FALSE(F.s_at(1.0L).has_value());
}
