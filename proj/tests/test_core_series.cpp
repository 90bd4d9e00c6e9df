#include "doctest.h"

#include <random>
#include <stdexcept>

#include "ecj/series.hpp"
#include "oracles.hpp"

using namespace ecj;

namespace {

FourierSeries poly(std::vector<std::pair<int, double>> terms, int trunc) {
    FourierSeries f;
    f.truncation = Rational(trunc);
    for (auto [n, c] : terms) f.set(Rational(n), c);
    return f;
}

FourierSeries random_series(std::mt19937_64& rng, int lambda, int trunc) {
    std::uniform_int_distribution<int> coef(-5, 5);
    FourierSeries f;
    f.lattice = Lattice{Rational(0), lambda};
    f.truncation = Rational(trunc);
    for (int n = 0; n <= trunc * lambda; ++n) f.set(Rational(n, lambda), cd(coef(rng), coef(rng)));
    return f;
}

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
    Rational a(6, -8);
    CHECK(a.num() == -3);
    CHECK(a.den() == 4);
    CHECK((a + Rational(3, 4)) == Rational(0));
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(-7, 3).frac() == Rational(2, 3));
    CHECK(Rational::parse("-5/10") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS(Rational::parse("1/x"));
}

TEST_CASE("checked integer helpers refuse overflow") {
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), std::overflow_error);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
    CHECK(checked_lcm(4, 6) == 12);
    CHECK(pos_mod(-3, 5) == 2);
}

TEST_CASE("unit_phase is exact at eighths") {
    CHECK(unit_phase(Rational(1, 2)) == cd(-1.0, 0.0));
    CHECK(unit_phase(Rational(1, 4)) == cd(0.0, 1.0));
    CHECK(std::abs(unit_phase(Rational(1, 3)) - std::polar(1.0, 2 * std::numbers::pi / 3)) < 1e-15);
}

TEST_CASE("(1 + q)(1 - q) = 1 - q^2") {
    FourierSeries p = series_mul(poly({{0, 1}, {1, 1}}, 5), poly({{0, 1}, {1, -1}}, 5));
    CHECK(p.coeff_at(Rational(0)) == cd(1.0));
    CHECK(p.coeff_at(Rational(1)) == cd(0.0));
    CHECK(p.coeff_at(Rational(2)) == cd(-1.0));
    CHECK(p.truncation == Rational(5));
}

TEST_CASE("product with the zero series is zero") {
    FourierSeries z;
    z.truncation = Rational(4);
    CHECK(series_mul(poly({{0, 2}, {3, 1}}, 4), z).is_zero());
}

TEST_CASE("eta squared has coefficient -2 at q^{1/12 + 1}") {
    FourierSeries e1 = eta_series(1, Rational(10));
    FourierSeries e2 = series_mul(e1, e1);
    CHECK(e2.coeff_at(Rational(1, 12) + Rational(1)) == cd(-2.0));
    FourierSeries direct = eta_series(2, Rational(10));
    for (const auto& [n, c] : direct.coeffs) CHECK(e2.coeff_at(direct.exponent(n)) == c);
}

TEST_CASE("eta values agree with the product oracle") {
    FourierSeries e = eta_series(1, Rational(30));
    cd at_i = series_eval(e, cd(0, 1)).value;
    double closed = std::tgamma(0.25) / (2.0 * std::pow(std::numbers::pi, 0.75));
    CHECK(std::abs(at_i - closed) < 1e-12);
    CHECK(std::abs(at_i - 0.768225) < 1e-6);
    cd shifted = series_eval(e, cd(1, 1)).value;
    CHECK(std::abs(shifted - std::polar(1.0, std::numbers::pi / 12) * at_i) < 1e-12);
    for (cd tau : {cd(0.3, 0.7), cd(-0.2, 1.5)}) CHECK(oracle::rel(series_eval(e, tau).value, oracle::eta(tau)) < 1e-12);
}

TEST_CASE("evaluation refuses points below the floor") {
    FourierSeries one = poly({{0, 1}}, 3);
    CHECK(series_eval(one, cd(0, 1)).value == cd(1.0));
    CHECK_THROWS(series_eval(one, cd(0, 0.01)));
}

TEST_CASE("retruncate never raises the order") {
    FourierSeries f = poly({{0, 1}, {2, 1}}, 3);
    CHECK(retruncate(f, Rational(1)).coeffs.size() == 1);
    CHECK_THROWS(retruncate(f, Rational(5)));
}

TEST_CASE("property: multiplication is commutative and associative") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        FourierSeries a = random_series(rng, 1, 6), b = random_series(rng, 2, 6), c = random_series(rng, 3, 6);
        FourierSeries ab = series_mul(a, b), ba = series_mul(b, a);
        for (const auto& [n, v] : ab.coeffs) CHECK(std::abs(ba.coeff_at(ab.exponent(n)) - v) < 1e-12);
        FourierSeries l = series_mul(ab, c), r = series_mul(a, series_mul(b, c));
        for (const auto& [n, v] : l.coeffs) CHECK(std::abs(r.coeff_at(l.exponent(n)) - v) < 1e-9);
    }
}

TEST_CASE("property: evaluation is a ring homomorphism up to truncation") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        FourierSeries a = eta_series(1 + trial, Rational(40)), b = eta_series(3, Rational(40));
        cd tau(0.1 * trial, 1.2);
        cd lhs = series_eval(series_mul(a, b), tau).value;
        cd rhs = series_eval(a, tau).value * series_eval(b, tau).value;
        CHECK(oracle::rel(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("json round trip preserves series exactly") {
    FourierSeries e = eta_series(7, Rational(12));
    FourierSeries back = fourier_from_json(to_json(e));
    CHECK(back.truncation == e.truncation);
    CHECK(back.coeffs == e.coeffs);
    CHECK(back.lattice.kappa == e.lattice.kappa);
}

TEST_CASE("jacobi series multiply in both variables") {
    JacobiSeries a;
    a.index = Rational(1, 2);
    a.lattice = Lattice{Rational(1, 8), 1};
    a.zeta_den = 2;
    a.truncation = Rational(3);
    a.set(Rational(1, 8), Rational(1, 2), 1.0);
    a.set(Rational(1, 8), Rational(-1, 2), -1.0);
    JacobiSeries sq = series_mul(a, a);
    CHECK(sq.index == Rational(1));
    CHECK(sq.coeff_at(Rational(1, 4), Rational(1)) == cd(1.0));
    CHECK(sq.coeff_at(Rational(1, 4), Rational(0)) == cd(-2.0));
    CHECK(sq.coeff_at(Rational(1, 4), Rational(-1)) == cd(1.0));
}
