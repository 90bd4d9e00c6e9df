#include "doctest.h"

#include <random>

#include "ecj/modular_group.hpp"
#include "oracles.hpp"

using namespace ecj;

TEST_CASE("dedekind sums match the defining sum") {
    CHECK(dedekind_sum(1, 3) == Rational(1, 18));
    CHECK(dedekind_sum(1, 1) == Rational(0));
    for (std::int64_t c = 1; c <= 40; ++c)
        for (std::int64_t d = -c; d <= 2 * c; ++d)
            if (extended_gcd(d, c).g == 1) CHECK(dedekind_sum(d, c) == oracle::dedekind_sum(d, c));
    CHECK_THROWS(dedekind_sum(2, 4));
    CHECK_THROWS(dedekind_sum(1, 0));
}

TEST_CASE("group elements check the determinant and multiply exactly") {
    CHECK_THROWS_AS(GroupElement::make(1, 1, 1, 1), std::invalid_argument);
    GroupElement s = GroupElement::S();
    CHECK(s * s == GroupElement::minus_identity());
    CHECK(GroupElement::parse("2,1,1,1") == GroupElement{2, 1, 1, 1});
    CHECK(GroupElement::parse("S T^2") == GroupElement::S() * GroupElement::T(2));
    CHECK_THROWS(GroupElement::parse("1,2,3"));
    CHECK_THROWS(GroupElement::parse("S X"));
    GroupElement big{INT64_MAX / 2, 1, 0, 1}, three{3, 0, 0, 1};
    CHECK_THROWS_AS(big * three, std::overflow_error);
}

TEST_CASE("(1 0; 1 1) decomposes as T S T") {
    GroupElement g{1, 0, 1, 1};
    CHECK(word_str(decompose_word(g)) == "T S T");
    CHECK(word_product(decompose_word(g)) == g);
}

TEST_CASE("property: word decomposition round trips") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        GroupElement g = random_element(rng, 50);
        Word w = decompose_word(g);
        CHECK(word_product(w) == g);
        CHECK(word_product(parse_word(word_str(w))) == g);
        CHECK(w.size() <= 64);
    }
    CHECK(word_product(decompose_word(GroupElement::minus_identity())) == GroupElement::minus_identity());
}

TEST_CASE("eta multiplier agrees with the eta quotient") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 60; ++i) {
        GroupElement g = random_element(rng, 6);
        cd tau(0.13, 0.9);
        cd num = oracle::eta_multiplier(g.a, g.b, g.c, g.d, tau);
        CHECK(std::abs(eta_multiplier(g) - num) < 1e-10);
    }
    CHECK(eta_phase(GroupElement::T()) == Rational(1, 24));
    CHECK(eta_phase(GroupElement::S()) == Rational(-1, 8).frac());
}

TEST_CASE("property: eta powers are consistent multiplier systems") {
    std::mt19937_64 rng(8);
    std::vector<GroupPair> pairs;
    for (int i = 0; i < 50; ++i) pairs.push_back({random_element(rng, 8), random_element(rng, 8)});
    std::vector<cd> taus{cd(0.2, 0.8), cd(-0.4, 1.3)};
    for (int h : {1, 5, 12, 13})
        CHECK(multiplier_consistency_check(MultiplierSystem::eta_power_of(h), pairs, taus) < 1e-10);
}

TEST_CASE("moebius action, automorphy and cusps") {
    GroupElement g{2, 1, 1, 1};
    cd tau(0.3, 0.7);
    cd gt = act_moebius(g, tau);
    CHECK(std::abs(gt.imag() - tau.imag() / std::norm(cocycle_factor(g, tau))) < 1e-14);
    CHECK(std::abs(act_moebius(g.inverse(), gt) - tau) < 1e-14);
    CHECK(act_cusp(g, Cusp::infinity()) == Cusp::at(Rational(2)));
    CHECK(act_cusp(GroupElement::S(), Cusp::at(Rational(0))) == Cusp::infinity());
    CHECK(mu_norm(g) == 7);
    CHECK(std::abs(principal_pow(cd(0.0, 1.0), 0.5) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
}

TEST_CASE("metaplectic composition tracks the square root branch") {
    cd tau(0.1, 0.5);
    MetaplecticElement s{GroupElement::S(), 1};
    MetaplecticElement ss = MetaplecticElement::compose(s, s, tau);
    CHECK(ss.gamma == GroupElement::minus_identity());
    cd direct = s.phi(act_moebius(s.gamma, tau)) * s.phi(tau);
    CHECK(std::abs(ss.phi(tau) - direct) < 1e-14);
}

TEST_CASE("random elements respect the entry bound") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        GroupElement g = random_element(rng, 3);
        CHECK(std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)}) <= 3);
        CHECK(g.a * g.d - g.b * g.c == 1);
    }
}
