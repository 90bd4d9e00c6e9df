#include "doctest.h"

#include <random>

#include "ecj/eichler.hpp"
#include "oracles.hpp"

using namespace ecj;

namespace {

const VVForm& test_vv() {
    static const VVForm F = decompose(build_testform(Rational(60)));
    return F;
}

std::vector<cd> taus(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.6, 1.5);
    std::vector<cd> out;
    for (int i = 0; i < n; ++i) out.emplace_back(u(rng), v(rng));
    return out;
}

}  // namespace

TEST_CASE("incomplete gamma agrees with quadrature") {
    for (double s : {0.5, 1.0, 2.0, 4.5, 11.0})
        for (double x : {0.05, 0.7, 3.0, 25.0}) {
            CAPTURE(s);
            CAPTURE(x);
            double ref = oracle::upper_gamma(s, x);
            CHECK(std::abs(incomplete_gamma_upper(s, x) - ref) < 1e-12 * std::max(1e-300, ref) + 1e-300);
            CHECK(std::abs(scaled_incomplete_gamma(s, x) / (std::exp(x) * ref) - 1.0) < 1e-11);
        }
    for (double s : {-3.0, -2.5, -1.0, 0.0, -0.5})
        for (double x : {0.3, 2.0, 12.0}) {
            CAPTURE(s);
            CAPTURE(x);
            double ref = std::exp(x) * oracle::upper_gamma(s, x);
            CHECK(std::abs(scaled_incomplete_gamma(s, x) / ref - 1.0) < 1e-10);
        }
    CHECK_THROWS(incomplete_gamma_upper(-1.0, 1.0));
}

TEST_CASE("Eichler integrals agree with quadrature in both conventions") {
    std::mt19937_64 rng(51);
    for (Convention conv : {Convention::Conjugate, Convention::Holomorphic})
        for (cd tau : taus(rng, 4))
            CHECK(mixed_residual(eichler_integral(test_vv(), 2.0, conv, tau),
                                 eichler_integral_quadrature(test_vv(), 2.0, conv, tau)) < 1e-9);
}

TEST_CASE("moments: integer and real exponent paths agree") {
    for (const GroupElement& g : {GroupElement::S(), GroupElement{2, 1, 1, 1}, GroupElement{1, 0, 3, 1}}) {
        MomentResult a = period_moments(test_vv(), g, 2);
        MomentResult b = period_moments(test_vv(), g, std::vector<double>{0.0, 1.0, 2.0});
        REQUIRE(a.moments.size() == 3);
        for (int l = 0; l < 3; ++l) CHECK(mixed_residual(a.moments[l], b.moments[l]) < 1e-10);
        CHECK(a.error_estimate < 1e-10);
    }
}

TEST_CASE("moments agree with direct quadrature against w^l") {
    GroupElement g{2, 1, 1, 1};
    MomentResult m = period_moments(test_vv(), g, 2);
    double x0 = -1.0;
    for (int l = 0; l <= 2; ++l) {
        Vec q = cusp_integral_quadrature(test_vv(), g, [&](cd w) { return std::pow(w - x0, l); });
        CHECK(mixed_residual(m.moments[l], q) < 1e-9);
    }
}

TEST_CASE("period values agree with the Eichler integral and with quadrature") {
    std::mt19937_64 rng(52);
    for (Convention conv : {Convention::Conjugate, Convention::Holomorphic}) {
        PeriodCocycle pc(test_vv(), 2.0, conv);
        for (const GroupElement& g : {GroupElement::S(), GroupElement{1, 0, 1, 1}, GroupElement{3, -1, 4, -1}})
            for (cd tau : taus(rng, 2)) {
                CHECK(mixed_residual(pc.value(g, tau), pc.via_quadrature(g, tau)) < 1e-9);
                CHECK(mixed_residual(pc.value(g, tau), pc.via_word(g, tau)) < 1e-9);
            }
        CHECK(pc.polynomial(GroupElement::S()).has_value());
        CHECK(pc.polynomial(GroupElement::S())->size() == 3);
    }
}

TEST_CASE("property: periods satisfy the cocycle identity") {
    std::mt19937_64 rng(53);
    for (Convention conv : {Convention::Conjugate, Convention::Holomorphic}) {
        PeriodCocycle pc(test_vv(), 2.0, conv);
        std::vector<GroupPair> pairs;
        for (int i = 0; i < 10; ++i) pairs.push_back({random_element(rng, 3), random_element(rng, 3)});
        CHECK(cocycle_identity_residual(pc, pairs, taus(rng, 2)) < 1e-8);
    }
}

TEST_CASE("g_{T^n} vanishes and the cocycle is a coboundary of the Eichler integral") {
    PeriodCocycle pc(test_vv(), 2.0, Convention::Holomorphic);
    std::mt19937_64 rng(54);
    std::vector<cd> samples = taus(rng, 3);
    for (std::int64_t n = -4; n <= 4; ++n)
        for (cd tau : samples) CHECK((pc.value(GroupElement::T(n), tau).array() == cd(0.0)).all());
    PElement G = eichler_element(test_vv(), 2.0, Convention::Holomorphic);
    CocycleFn f = [&](const GroupElement& g, cd tau) { return pc.value(g, tau); };
    std::vector<GroupElement> gs{GroupElement::S(), GroupElement{1, 0, 1, 1}, GroupElement{2, 1, 1, 1}};
    CHECK(coboundary_residual(f, G, pc.slash(), gs, samples) < 1e-9);
}

TEST_CASE("the zero element slashes to zero") {
    PElement z = PElement::zero(2);
    PeriodCocycle pc(test_vv(), 2.0, Convention::Conjugate);
    PElement s = slash_p(z, GroupElement{2, 1, 1, 1}, pc.slash());
    CHECK((s(cd(0.1, 0.9)).array() == cd(0.0)).all());
}

TEST_CASE("growth fits recover known exponents") {
    GrowthParams quad = fit_growth([](cd t) {
        Vec v(1);
        v << t * t;
        return v;
    });
    CHECK(quad.ok);
    CHECK(quad.rho == doctest::Approx(2.0));
    CHECK(quad.sigma <= 0.5);
    for (cd t : {cd(3.0, 0.1), cd(-4.5, 2.0), cd(0.2, 0.06)})
        CHECK(std::abs(t * t) < quad.K * (std::pow(std::abs(t), quad.rho) + std::pow(t.imag(), -quad.sigma)));
    GrowthParams cusp = fit_growth([](cd t) {
        Vec v(1);
        v << std::pow(t.imag(), -1.5);
        return v;
    });
    CHECK(cusp.ok);
    CHECK(cusp.sigma == doctest::Approx(1.5));
    GrowthParams zero = fit_growth([](cd) { return Vec::Zero(1).eval(); });
    CHECK(zero.ok);
    CHECK(zero.K <= 1e-300);
    GrowthParams wild = fit_growth([](cd t) {
        Vec v(1);
        v << std::exp(std::exp(3.0 / t.imag()));
        return v;
    });
    CHECK_FALSE(wild.ok);
}
