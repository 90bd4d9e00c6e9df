#include "doctest.h"

#include <random>

#include "ecj/cohomology.hpp"
#include "oracles.hpp"

using namespace ecj;

namespace {

const VVForm& test_vv() {
    static const VVForm F = decompose(build_testform(Rational(60)));
    return F;
}

cd monomial_value(const Monomial& p, cd tau, cd z) {
    return oracle::e(cd(p.phase.to_double()) + p.n.to_double() * tau + p.r.to_double() * z);
}

}  // namespace

TEST_CASE("property: projection inverts the theta lift") {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::int64_t m = 1; m <= 3; ++m)
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<cd> a(2 * m);
            for (auto& x : a) x = cd(u(rng), u(rng));
            VecFn f = [a, m](cd tau) {
                Vec v(2 * m);
                for (std::int64_t mu = 0; mu < 2 * m; ++mu) v(mu) = a[mu] * std::exp(cd(0, 1) * double(mu + 1) * tau);
                return v;
            };
            cd tau(0.2 * trial - 0.3, 0.9);
            CHECK(mixed_residual(project(lift_function(f, m), m, tau), f(tau)) < 1e-10);
        }
}

TEST_CASE("coefficient projection agrees with decomposition") {
    JacobiForm phi = build_testform(Rational(20));
    VVForm a = project(phi.series, 1, phi.weight, phi.multiplier);
    VVForm b = decompose(phi);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) CHECK(a.components[i].coeffs == b.components[i].coeffs);
}

TEST_CASE("the lift of a coboundary is a coboundary") {
    PeriodCocycle pc(test_vv(), 2.0, Convention::Holomorphic);
    JacobiCocycle lifted = lift_cocycle(pc);
    CHECK(lifted.m == 1);
    JacobiFn G = lift_function(eichler_element(test_vv(), 2.0, Convention::Holomorphic).eval, 1);
    std::vector<JacobiGroupElement> gs{{GroupElement::S(), {0, 0}}, {GroupElement{2, 1, 1, 1}, {1, -1}},
                                       {GroupElement{1, 0, 1, 1}, {0, 2}}};
    for (const auto& gx : gs)
        for (auto [tau, z] : std::vector<JacobiSample>{{cd(0.1, 1.1), cd(0.05, 0.02)}, {cd(-0.2, 0.8), cd(0.2, -0.03)}}) {
            cd lhs = lifted.value(gx, tau, z);
            cd rhs = slash_jacobi(G, gx, lifted.weight, 1.0, lifted.chi)(tau, z) - G(tau, z);
            CHECK(mixed_residual(lhs, rhs) < 1e-8);
        }
}

TEST_CASE("property: the lifted period cocycle satisfies the cocycle condition") {
    PeriodCocycle pc(test_vv(), 2.0, Convention::Holomorphic);
    JacobiCocycle lifted = lift_cocycle(pc);
    std::mt19937_64 rng(82);
    std::vector<JacobiPair> pairs;
    for (int i = 0; i < 8; ++i) pairs.push_back({{random_element(rng, 2), {i % 3 - 1, 1}}, {random_element(rng, 2), {0, i % 2}}});
    CHECK(jacobi_cocycle_check(lifted, pairs, {{cd(0.1, 1.1), cd(0.05, 0.02)}}) < 1e-6);
}

TEST_CASE("the zero cocycle passes trivially") {
    JacobiCocycle zero{1, 0.5, MultiplierSystem::trivial(0.5), "explicit", [](const JacobiGroupElement&, cd, cd) { return cd(0.0); }};
    std::vector<JacobiPair> pairs{{{GroupElement::S(), {1, 0}}, {GroupElement::T(), {0, 1}}}};
    CHECK(jacobi_cocycle_check(zero, pairs, {{cd(0.1, 1.0), cd(0.0)}}) == 0.0);
}

TEST_CASE("obstruction phases for q^n zeta^r") {
    const std::vector<std::pair<Rational, Rational>> cases{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(1, 3)},
                                                           {Rational(1, 5), Rational(1, 5)}, {Rational(1), Rational(0)},
                                                           {Rational(-2), Rational(0)}};
    for (const auto& [r, phase] : cases) {
        ObstructionVerdict v = elliptic_obstruction(Rational(1), r);
        CHECK(v.phase == phase);
        CHECK(v.non_coboundary == (phase != Rational(0)));
        CHECK(std::abs(v.phase_value - oracle::e(cd(phase.to_double()))) < 1e-15);
        CHECK(v.slashed == slash_elliptic(Monomial{Rational(0), Rational(1), r}, LatticeElement{0, 1}, Rational(1)));
        CHECK_FALSE(v.derivation.empty());
    }
}

TEST_CASE("property: exact elliptic slash of monomials composes up to the commutator and matches evaluation") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<int> small(-3, 3), den(1, 6);
    for (int i = 0; i < 50; ++i) {
        Monomial p{Rational(small(rng), den(rng)), Rational(small(rng) + 4, den(rng)), Rational(small(rng), den(rng))};
        LatticeElement X{small(rng), small(rng)}, Y{small(rng), small(rng)};
        Rational m(den(rng), 2);
        Monomial two = slash_elliptic(slash_elliptic(p, X, m), Y, m);
        Monomial one = slash_elliptic(p, LatticeElement{X.lambda + Y.lambda, X.mu + Y.mu}, m);
        CHECK(two.n == one.n);
        CHECK(two.r == one.r);
        CHECK((two.phase - one.phase - m * Rational(X.lambda * Y.mu - Y.lambda * X.mu)).is_integer());

        cd tau(0.1, 1.3), z(0.07, 0.02);
        JacobiFn f = [p](cd t, cd w) { return monomial_value(p, t, w); };
        cd numeric = slash_elliptic(f, X, m.to_double())(tau, z);
        cd exact = monomial_value(slash_elliptic(p, X, m), tau, z);
        CHECK(oracle::rel(exact, numeric) < 1e-9);
    }
}

TEST_CASE("growth certificates") {
    for (std::int64_t a = 0; a < 4; ++a)
        CHECK(growth_certify_pe([a](cd t, cd z) { return theta_value(2, a, t, z); }, 2).ok);
    GrowthParams zero = growth_certify_pe([](cd, cd) { return cd(0.0); }, 1);
    CHECK(zero.ok);
    CHECK(growth_certify_pe([](cd t, cd z) { return oracle::e(t + 0.5 * z); }, 1).ok);
    CHECK_FALSE(growth_certify_pe([](cd t, cd) { return std::exp(std::exp(3.0 / t.imag())); }, 1).ok);
}
