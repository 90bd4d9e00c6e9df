#include "doctest.h"

#include <random>

#include "ecj/theta.hpp"
#include "oracles.hpp"

using namespace ecj;

TEST_CASE("theta values agree with the brute-force lattice sum") {
    std::vector<std::pair<cd, cd>> pts{{cd(0.1, 0.8), cd(0.3, 0.1)}, {cd(-0.4, 1.5), cd(-0.2, 0.4)},
                                       {cd(0.0, 0.3), cd(0.1, -0.05)}};
    for (std::int64_t m = 1; m <= 4; ++m)
        for (std::int64_t mu = 0; mu < 2 * m; ++mu)
            for (auto [tau, z] : pts) CHECK(oracle::rel(theta_value(m, mu, tau, z), oracle::theta(m, mu, tau, z)) < 1e-12);
}

TEST_CASE("theta series evaluates to theta values") {
    for (std::int64_t m : {1, 3})
        for (std::int64_t mu = 0; mu < 2 * m; ++mu) {
            JacobiSeries s = theta_series(m, mu, Rational(30));
            cd tau(0.2, 1.0), z(0.1, 0.05);
            CHECK(oracle::rel(jacobi_eval(s, tau, z).value, theta_value(m, mu, tau, z)) < 1e-12);
        }
}

TEST_CASE("normalized theta stays finite for large imaginary z") {
    cd tau(0.1, 0.5), z(0.2, 3.0);
    cd n = theta_value_normalized(1, 1, tau, z);
    CHECK(std::isfinite(std::abs(n)));
    cd direct = theta_value(1, 1, tau, z) * std::exp(-2 * std::numbers::pi * 9.0 / 0.5);
    CHECK(std::abs(n - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("property: theta vector satisfies the S and T laws") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.4, 2.0);
    std::vector<std::pair<cd, cd>> samples;
    for (int i = 0; i < 10; ++i) samples.push_back({cd(u(rng), v(rng)), cd(u(rng), 0.3 * u(rng))});
    for (std::int64_t m = 1; m <= 4; ++m) {
        ThetaLawReport r = theta_transform_check(m, samples);
        CHECK(r.s_law < 1e-11);
        CHECK(r.t_law < 1e-11);
    }
}

TEST_CASE("test form decomposes into two components and recomposes exactly") {
    JacobiForm f = build_testform(Rational(30));
    VVForm F = decompose(f);
    CHECK(F.m == 1);
    CHECK(F.components.size() == 2);
    CHECK(F.weight == doctest::Approx(4.0));
    CHECK(F.multiplier.eta_power == 12);
    CHECK(F.components[1].coeff_at(Rational(7, 24)) == cd(1.0));
    CHECK(F.components[0].coeff_at(Rational(13, 24)) == cd(-2.0));
    JacobiSeries back = recompose(F);
    CHECK(back.coeffs.size() == f.series.coeffs.size());
    for (const auto& [key, c] : f.series.coeffs)
        CHECK(back.coeff_at(f.series.q_exponent(key.first), f.series.z_exponent(key.second)) == c);
}

TEST_CASE("property: components transform under the twisted representation") {
    VVForm F = decompose(build_testform(Rational(40)));
    std::mt19937_64 rng(42);
    std::vector<cd> samples{cd(0.1, 1.2), cd(-0.3, 0.9), cd(0.4, 1.6)};
    CHECK(vv_transform_check(F, GroupElement::S(), samples) < 1e-10);
    CHECK(vv_transform_check(F, GroupElement::T(), samples) < 1e-10);
    for (int i = 0; i < 5; ++i) {
        GroupElement g = random_element(rng, 2);
        CHECK(vv_transform_check(F, g, samples) < 1e-8);
    }
}

TEST_CASE("property: vector slash is an action") {
    VVForm F = decompose(build_testform(Rational(40)));
    SlashType t = slash_type(F);
    VecFn f = [](cd tau) {
        Vec v(2);
        v << std::exp(cd(0, 1) * tau), 1.0 / (tau + cd(0, 3));
        return v;
    };
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) {
        GroupElement a = random_element(rng, 4), b = random_element(rng, 4);
        cd tau(0.21, 0.8);
        Vec lhs = vv_slash(vv_slash(f, a, t), b, t)(tau);
        Vec rhs = vv_slash_value(f, a * b, t, tau);
        CHECK(mixed_residual(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("decomposition refuses an index mismatch") {
    JacobiForm f = build_testform(Rational(10));
    CHECK_THROWS(decompose(f.series, 2, f.weight, f.multiplier));
}

TEST_CASE("vector-valued form json round trip") {
    VVForm F = decompose(build_testform(Rational(10)));
    VVForm G = vvform_from_json(to_json(F));
    CHECK(G.m == F.m);
    CHECK(G.multiplier.eta_power == F.multiplier.eta_power);
    for (std::size_t i = 0; i < F.components.size(); ++i) CHECK(G.components[i].coeffs == F.components[i].coeffs);
}
