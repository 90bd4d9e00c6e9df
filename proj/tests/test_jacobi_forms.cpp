#include "doctest.h"

#include <random>

#include "ecj/jacobi_forms.hpp"
#include "oracles.hpp"

using namespace ecj;

TEST_CASE("test form coefficients match integer polynomial arithmetic") {
    JacobiForm f = build_testform(Rational(12));
    auto ref = oracle::testform_coefficients(12);
    CHECK(f.weight == doctest::Approx(4.5));
    CHECK(f.index == 1);
    CHECK(f.multiplier.eta_power == 13);
    std::size_t nonzero = 0;
    for (const auto& [key, c] : f.series.coeffs) {
        Rational qe = f.series.q_exponent(key.first), ze = f.series.z_exponent(key.second);
        auto it = ref.find({qe, ze});
        long long expect = it == ref.end() ? 0 : it->second;
        CHECK(c == cd(static_cast<double>(expect)));
        if (c != cd(0.0)) ++nonzero;
    }
    CHECK(nonzero == ref.size());
    CHECK(f.series.coeff_at(Rational(13, 24), Rational(0)) == cd(-2.0));
    CHECK(f.series.coeff_at(Rational(13, 24), Rational(1)) == cd(1.0));
}

TEST_CASE("test form is cuspidal with minimal discriminant 7/6") {
    JacobiForm f = build_testform(Rational(10));
    CuspidalVerdict v = check_cuspidal(f.series, Rational(1));
    CHECK(v.cuspidal);
    REQUIRE(v.min_discriminant);
    CHECK(*v.min_discriminant == Rational(7, 6));
    JacobiSeries bad = f.series;
    bad.set(Rational(13, 24), Rational(3), 1.0);
    CuspidalVerdict w = check_cuspidal(bad, Rational(1));
    CHECK_FALSE(w.cuspidal);
    REQUIRE(w.witness);
    CHECK(w.witness->first == Rational(13, 24));
    CHECK(w.witness->second == Rational(3));
}

TEST_CASE("test form is elliptically invariant coefficientwise") {
    JacobiForm f = build_testform(Rational(20));
    std::vector<LatticeElement> Xs{{1, 0}, {0, 1}, {-1, 2}, {2, -1}};
    CHECK(elliptic_invariance_residual(f.series, Rational(1), Xs) < 1e-12);
}

TEST_CASE("property: test form is invariant under the modular slash") {
    JacobiForm f = build_testform(Rational(40));
    JacobiFn F = evaluator(f.series);
    std::vector<GroupElement> gs{GroupElement::S(), GroupElement::T(), GroupElement{1, 0, 1, 1},
                                 GroupElement{2, 1, 1, 1}};
    std::vector<std::pair<cd, cd>> pts{{cd(0.1, 1.1), cd(0.2, 0.05)}, {cd(-0.3, 0.9), cd(0.0, 0.1)},
                                       {cd(0.45, 1.3), cd(-0.3, 0.0)}};
    for (const auto& g : gs) {
        JacobiFn G = slash_modular(F, g, f.weight, 1.0, f.multiplier);
        for (auto [tau, z] : pts) CHECK(oracle::rel(G(tau, z), F(tau, z)) < 1e-9);
    }
    JacobiFn E = slash_elliptic(F, LatticeElement{1, -1}, 1.0);
    for (auto [tau, z] : pts) CHECK(oracle::rel(E(tau, z), F(tau, z)) < 1e-9);
}

TEST_CASE("property: the Jacobi slash is an action") {
    JacobiFn f = [](cd tau, cd z) { return std::exp(cd(0, 1) * (tau + 0.3 * z)) / (tau + 2.0 * cd(0, 1)); };
    std::mt19937_64 rng(31);
    MultiplierSystem chi = MultiplierSystem::eta_power_of(13);
    for (int i = 0; i < 15; ++i) {
        JacobiGroupElement a{random_element(rng, 3), {i % 3 - 1, 1}};
        JacobiGroupElement b{random_element(rng, 3), {1, -(i % 2)}};
        JacobiFn lhs = slash_jacobi(slash_jacobi(f, a, 4.5, 1.0, chi), b, 4.5, 1.0, chi);
        JacobiFn rhs = slash_jacobi(f, a * b, 4.5, 1.0, chi);
        cd tau(0.17, 1.4), z(0.05, 0.02);
        CHECK(oracle::rel(lhs(tau, z), rhs(tau, z)) < 1e-9);
    }
}

TEST_CASE("lattice action composes with group multiplication") {
    LatticeElement X{2, -3};
    GroupElement g{2, 1, 1, 1}, h = GroupElement::S();
    CHECK(lattice_act(lattice_act(X, g), h) == lattice_act(X, g * h));
    JacobiGroupElement a{g, X}, b{h, {1, 1}};
    JacobiGroupElement ab = a * b;
    CHECK(ab.gamma == g * h);
    CHECK(ab.X == LatticeElement{lattice_act(X, h).lambda + 1, lattice_act(X, h).mu + 1});
}

TEST_CASE("evaluator refuses points below the floor") {
    JacobiFn F = evaluator(build_testform(Rational(8)).series);
    CHECK_THROWS(F(cd(0, 0.01), cd(0)));
}

TEST_CASE("json round trip of a Jacobi form") {
    JacobiForm f = build_testform(Rational(6));
    JacobiForm g = jacobiform_from_json(to_json(f));
    CHECK(g.series.coeffs == f.series.coeffs);
    CHECK(g.weight == f.weight);
    CHECK(g.index == f.index);
    CHECK(g.multiplier.eta_power == f.multiplier.eta_power);
}
