#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "olk/orlicz.hpp"

using namespace olk;

namespace {

std::vector<OrliczFunction> finite_zoo() {
    return {
        OrliczFunction::power(1.0L),
        OrliczFunction::power(1.5L, 0.5L),
        OrliczFunction::power(2.0L),
        OrliczFunction::power(3.0L, 2.0L),
        OrliczFunction::exp_n(),
        OrliczFunction::exp_plain(),
        OrliczFunction::exp_n_conj(),
        OrliczFunction::piecewise({0.0L, 1.0L}, {1.0L, 3.0L}),
        OrliczFunction::piecewise({0.0L, 0.5L, 2.0L}, {0.5L, 1.0L, 2.0L}),
    };
}

bool same_shape(const ExtOrliczFunction& a, const ExtOrliczFunction& b) {
    if (a.kind() != b.kind()) return false;
    if (a.v_inf() != b.v_inf()) return false;
    if (a.kind() == ExtOrliczFunction::Kind::power)
        return a.param_p() == b.param_p() &&
               std::abs(a.param_c() - b.param_c()) <= 1e-15L * b.param_c();
    if (a.kind() == ExtOrliczFunction::Kind::piecewise)
        return a.pw_breaks() == b.pw_breaks() && a.pw_slopes() == b.pw_slopes();
    return true;
}

} // namespace

TEST_CASE("power: closed forms") {
    ExtOrliczFunction f = ExtOrliczFunction::power(2.0L);
    CHECK(f.eval(3.0L) == 9.0L);
    CHECK(f.eval(0.0L) == 0.0L);
    CHECK(f.right_derivative(3.0L) == 6.0L);
    CHECK(f.inverse(9.0L) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(f.finite_everywhere());
    CHECK(std::isinf(f.slope_at_infinity()));

    ExtOrliczFunction lin = ExtOrliczFunction::power(1.0L, 2.5L);
    CHECK(lin.right_derivative(0.0L) == 2.5L);
    CHECK(lin.slope_at_infinity() == 2.5L);

    CHECK_THROWS_AS(ExtOrliczFunction::power(0.5L), std::invalid_argument);
    CHECK_THROWS_AS(ExtOrliczFunction::power(2.0L, -1.0L), std::invalid_argument);
    CHECK_THROWS_AS(f.eval(-1.0L), std::domain_error);
}

TEST_CASE("zero_jump and capped piecewise evaluate to +inf past v_inf") {
    ExtOrliczFunction z = ExtOrliczFunction::zero_jump(1.5L);
    CHECK(z.eval(1.5L) == 0.0L);
    CHECK(std::isinf(z.eval(1.5000001L)));
    CHECK(z.inverse(0.5L) == 1.5L);
    CHECK(z.vanishes_near_zero());

    ExtOrliczFunction pw = ExtOrliczFunction::piecewise({0.0L, 1.0L}, {0.0L, 1.0L}, 3.0L);
    CHECK(pw.eval(0.5L) == 0.0L);
    CHECK(pw.eval(2.0L) == 1.0L);
    CHECK(pw.eval(3.0L) == 2.0L);
    CHECK(std::isinf(pw.eval(3.1L)));
    CHECK(std::isinf(pw.right_derivative(3.0L)));
    CHECK(pw.inverse(1.5L) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("piecewise validation and canonical collapse") {
    CHECK_THROWS_AS(ExtOrliczFunction::piecewise({0.5L}, {1.0L}), std::invalid_argument);
    CHECK_THROWS_AS(ExtOrliczFunction::piecewise({0.0L, 1.0L}, {2.0L, 1.0L}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExtOrliczFunction::piecewise({0.0L, 1.0L}, {0.0L, 0.0L}),
                    std::invalid_argument);
    // Single effective slope collapses to the linear power kind.
    ExtOrliczFunction lin = ExtOrliczFunction::piecewise({0.0L, 1.0L}, {2.0L, 2.0L});
    CHECK(lin.kind() == ExtOrliczFunction::Kind::power);
    CHECK(lin.param_p() == 1.0L);
    CHECK(lin.param_c() == 2.0L);
    // All-zero slopes with a cap collapse to zero_jump.
    ExtOrliczFunction zj = ExtOrliczFunction::piecewise({0.0L}, {0.0L}, 2.0L);
    CHECK(zj.kind() == ExtOrliczFunction::Kind::zero_jump);
    CHECK(zj.v_inf() == 2.0L);
}

TEST_CASE("derivative consistency: central differences") {
    for (const OrliczFunction& phi : finite_zoo()) {
        for (real u : {0.26L, 1.03L, 2.9L}) {
            real h = 1e-7L;
            real fd = (phi.eval(u + h) - phi.eval(u - h)) / (2.0L * h);
            real d = phi.right_derivative(u);
            CHECK(std::abs(fd - d) <= 1e-5L * std::max<real>(1.0L, std::abs(d)));
        }
    }
}

TEST_CASE("convexity at midpoints, zero at zero") {
    for (const OrliczFunction& phi : finite_zoo()) {
        CHECK(phi.eval(0.0L) == 0.0L);
        for (real u : {0.1L, 0.7L, 1.9L})
            for (real v : {0.3L, 1.1L, 4.0L}) {
                real mid = phi.eval((u + v) / 2.0L);
                real avg = (phi.eval(u) + phi.eval(v)) / 2.0L;
                CHECK(mid <= avg * (1.0L + 1e-15L) + 1e-18L);
            }
        CHECK(phi.eval(1e-9L) > 0.0L); // vanishes only at 0
    }
}

TEST_CASE("inverse: roundtrip on a ladder") {
    for (const OrliczFunction& phi : finite_zoo()) {
        for (real u : {1.0L / 64.0L, 0.25L, 1.0L, 3.0L, 17.0L}) {
            real y = phi.eval(u);
            CHECK(phi.inverse(y) == doctest::Approx(double(u)).epsilon(1e-9));
            CHECK(phi.eval(phi.inverse(y)) == doctest::Approx(double(y)).epsilon(1e-9));
        }
        CHECK(phi.inverse(0.0L) == 0.0L);
    }
    // Flat-start piecewise: inverse(y) lands past the flat segment.
    ExtOrliczFunction pw = ExtOrliczFunction::piecewise({0.0L, 1.0L}, {0.0L, 2.0L});
    CHECK(pw.inverse(1.0L) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(pw.inverse(0.0L) == 0.0L);
}

TEST_CASE("conjugate: closed-form table") {
    ExtOrliczFunction p2c = ExtOrliczFunction::power(2.0L).conjugate();
    CHECK(p2c.kind() == ExtOrliczFunction::Kind::power);
    CHECK(p2c.param_p() == 2.0L);
    CHECK(p2c.eval(2.0L) == doctest::Approx(1.0).epsilon(1e-15)); // v^2/4

    ExtOrliczFunction p2c2 = ExtOrliczFunction::power(2.0L, 2.0L).conjugate();
    CHECK(p2c2.eval(4.0L) == doctest::Approx(2.0).epsilon(1e-14)); // v^2/8

    ExtOrliczFunction p1c = ExtOrliczFunction::power(1.0L, 3.0L).conjugate();
    CHECK(p1c.kind() == ExtOrliczFunction::Kind::zero_jump);
    CHECK(p1c.v_inf() == 3.0L);

    CHECK(ExtOrliczFunction::exp_n().conjugate().kind() ==
          ExtOrliczFunction::Kind::exp_n_conj);
    CHECK(ExtOrliczFunction::exp_plain().conjugate().kind() ==
          ExtOrliczFunction::Kind::exp_plain_conj);

    // phi(u) = u on [0,1), slope 3 beyond: conjugate is 0 on [0,1],
    // slope 1 on [1,3], +inf past 3.
    ExtOrliczFunction pw = ExtOrliczFunction::piecewise({0.0L, 1.0L}, {1.0L, 3.0L});
    ExtOrliczFunction pwc = pw.conjugate();
    CHECK(pwc.kind() == ExtOrliczFunction::Kind::piecewise);
    CHECK(pwc.pw_breaks() == std::vector<real>{0.0L, 1.0L});
    CHECK(pwc.pw_slopes() == std::vector<real>{0.0L, 1.0L});
    CHECK(pwc.v_inf() == 3.0L);
    CHECK(pwc.eval(1.0L) == 0.0L);
    CHECK(pwc.eval(3.0L) == 2.0L);
    CHECK(std::isinf(pwc.eval(3.5L)));
}

TEST_CASE("conjugation is an involution") {
    std::vector<ExtOrliczFunction> zoo;
    for (const OrliczFunction& phi : finite_zoo()) zoo.push_back(phi.ext());
    zoo.push_back(ExtOrliczFunction::zero_jump(2.0L));
    zoo.push_back(ExtOrliczFunction::piecewise({0.0L, 1.0L}, {0.0L, 2.0L}, 4.0L));
    zoo.push_back(ExtOrliczFunction::exp_plain_conj());
    for (const ExtOrliczFunction& f : zoo) {
        ExtOrliczFunction ff = f.conjugate().conjugate();
        CHECK(same_shape(ff, f));
        for (real u : {0.1L, 0.9L, 1.7L, 5.0L}) {
            real a = ff.eval(u), b = f.eval(u);
            if (std::isinf(b)) CHECK(std::isinf(a));
            else CHECK(a == doctest::Approx(double(b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("numeric Legendre transform matches the closed-form conjugates") {
    for (const OrliczFunction& phi : finite_zoo()) {
        ExtOrliczFunction conj = phi.complementary();
        for (real v : {0.25L, 0.5L, 1.0L, 2.0L, 4.0L, 8.0L}) {
            real closed = conj.eval(v);
            real numeric = numeric_conjugate(phi, v);
            if (std::isinf(closed)) {
                CHECK(numeric > 1e6L); // sup runs away along the grid
            } else {
                CHECK(std::abs(numeric - closed) <=
                      1e-9L * std::max<real>(1.0L, closed));
            }
        }
    }
}

TEST_CASE("young inequality: gap nonnegative, zero at the derivative") {
    for (const OrliczFunction& phi : finite_zoo()) {
        for (real u : {0.2L, 1.0L, 2.7L})
            for (real v : {0.1L, 1.3L, 6.0L}) {
                real gap = young_gap(phi, u, v);
                CHECK(gap >= -1e-12L * std::max<real>(1.0L, std::abs(gap)));
            }
    }
    // Equality at v = phi'(u) for smooth strictly convex kinds.
    for (const OrliczFunction& phi : {OrliczFunction::power(2.0L),
                                      OrliczFunction::power(3.0L, 2.0L),
                                      OrliczFunction::exp_n(),
                                      OrliczFunction::exp_n_conj()}) {
        for (real u : {0.5L, 1.0L, 2.0L}) {
            real v = phi.right_derivative(u);
            CHECK(std::abs(young_gap(phi, u, v)) <=
                  1e-10L * std::max<real>(1.0L, phi.eval(u)));
        }
    }
    CHECK(young_gap(OrliczFunction::power(2.0L), 1.5L, 3.0L) == 0.0L);
}

TEST_CASE("orlicz wrapper rejects degenerate carriers") {
    CHECK_THROWS_AS(OrliczFunction(ExtOrliczFunction::zero_jump(1.0L)),
                    std::invalid_argument);
    CHECK_THROWS_AS(OrliczFunction(ExtOrliczFunction::piecewise({0.0L, 1.0L}, {0.0L, 2.0L})),
                    std::invalid_argument);
    CHECK_THROWS_AS(OrliczFunction(ExtOrliczFunction::piecewise(
                        {0.0L, 1.0L}, {1.0L, 2.0L}, 4.0L)),
                    std::invalid_argument);
}

TEST_CASE("n-function flags") {
    CHECK(OrliczFunction::power(2.0L).is_n_function());
    CHECK(OrliczFunction::exp_n().is_n_function());
    CHECK(OrliczFunction::exp_n_conj().is_n_function());
    CHECK(!OrliczFunction::power(1.0L).is_n_function());
    CHECK(!OrliczFunction::exp_plain().is_n_function());
    CHECK(!OrliczFunction::piecewise({0.0L, 1.0L}, {1.0L, 2.0L}).is_n_function());

    NFunctionProbe pr = n_function_probe(OrliczFunction::power(2.0L));
    CHECK(*pr.analytic_zero);
    CHECK(*pr.analytic_infinity);
    CHECK(pr.empirical_zero);
    CHECK(pr.empirical_infinity);

    NFunctionProbe lin = n_function_probe(OrliczFunction::power(1.0L));
    CHECK(!*lin.analytic_zero);
    CHECK(!*lin.analytic_infinity);
    CHECK(!lin.empirical_zero);
    CHECK(!lin.empirical_infinity);

    NFunctionProbe ep = n_function_probe(OrliczFunction::exp_plain());
    CHECK(!*ep.analytic_zero);
    CHECK(*ep.analytic_infinity);
}

TEST_CASE("growth probe: quadratic passes, exponential has a witness") {
    Delta2Report ok = delta2_probe(OrliczFunction::power(2.0L), 10.0L, 1e-3L, 1e3L, 200);
    CHECK(ok.pass);
    CHECK(!ok.witness.has_value());
    CHECK(ok.grid.size() == 200);

    // phi(2u)/phi(u) for exp_n crosses 10 exactly once; locate the root
    // independently and expect the first grid point at or past it.
    OrliczFunction en = OrliczFunction::exp_n();
    real lo = 0.5L, hi = 32.0L;
    int samples = 25;
    real a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        real m = std::sqrt(a * b);
        if (en.eval(2.0L * m) > 10.0L * en.eval(m)) b = m; else a = m;
    }
    Delta2Report rep = delta2_probe(en, 10.0L, lo, hi, samples);
    CHECK(!rep.pass);
    REQUIRE(rep.witness.has_value());
    real expected = 0.0L;
    for (int j = 0; j < samples; ++j) {
        real u = lo * std::pow(hi / lo, real(j) / real(samples - 1));
        if (u >= b) { expected = u; break; }
    }
    CHECK(*rep.witness == doctest::Approx(double(expected)).epsilon(1e-12));
    CHECK(rep.ratio_at_witness > 10.0L);
    // Fixed-point spot check of the ratio, computed by hand:
    // (e^8 - 9) / (e^4 - 5) = 59.9208...
    real r4 = en.eval(8.0L) / en.eval(4.0L);
    CHECK(r4 == doctest::Approx(59.9208).epsilon(1e-4));

    CHECK_THROWS_AS(delta2_probe(en, 10.0L, 1.0L, 2.0L, 10, 1.0L), std::invalid_argument);
    CHECK_THROWS_AS(delta2_probe(en, 1.5L, 1.0L, 2.0L, 10, 2.0L), std::invalid_argument);
}

TEST_CASE("order probe by regime") {
    OrliczFunction p2 = OrliczFunction::power(2.0L), p3 = OrliczFunction::power(3.0L);
    // u^2 <= u^3 holds past 1, fails below.
    CHECK(order_leq(p2, p3, 1.0L, 1.0L, 1e-3L, 1e3L, 200, Regime::infinity).pass);
    OrderReport z = order_leq(p2, p3, 1.0L, 1.0L, 1e-3L, 1e3L, 200, Regime::zero);
    CHECK(!z.pass);
    CHECK(z.witness.has_value());
    // u^3 <= u^2 near zero.
    CHECK(order_leq(p3, p2, 1.0L, 1.0L, 1e-3L, 1e3L, 200, Regime::zero).pass);
    CHECK(!order_leq(p3, p2, 1.0L, 1.0L, 1e-3L, 1e3L, 200, Regime::global).pass);
    // Scaling b enters as phi2(b u).
    CHECK(order_leq(p2, p2, 2.0L, 1.0L, 1e-2L, 1e2L, 100, Regime::global).pass);
    CHECK_THROWS_AS(order_leq(p2, p3, -1.0L, 1.0L, 0.1L, 1.0L, 10), std::invalid_argument);
}

TEST_CASE("describe names every kind") {
    for (const OrliczFunction& phi : finite_zoo())
        CHECK(!phi.describe().empty());
    CHECK(ExtOrliczFunction::zero_jump(1.0L).describe() ==
          std::string("zero_jump(v_inf=1)"));
}
