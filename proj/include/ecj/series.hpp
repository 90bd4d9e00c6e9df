#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ecj/rational.hpp"

namespace ecj {

// Exponent lattice kappa/lambda + (1/lambda)Z with kappa in [0,1).
struct Lattice {
    Rational kappa{0};
    std::int64_t lambda = 1;

    Rational exponent(std::int64_t n) const { return (Rational(n) + kappa) / Rational(lambda); }
    // Index n with exponent(n) == e; throws if e is off the lattice.
    std::int64_t index_of(const Rational& e) const;
    bool contains(const Rational& e) const;
    // Smallest lattice containing every sum of an element of a and an element of b.
    static Lattice sum(const Lattice& a, const Lattice& b);
    // Smallest lattice containing both a and b (requires a shared coset).
    static Lattice join(const Lattice& a, const Lattice& b);
    static Lattice through(const Rational& e, std::int64_t lambda);
};

struct FourierSeries {
    Lattice lattice;
    std::map<std::int64_t, cd> coeffs;
    Rational truncation{0};

    Rational exponent(std::int64_t n) const { return lattice.exponent(n); }
    std::optional<Rational> valuation() const;
    bool is_zero() const { return coeffs.empty(); }
    // Coefficient at an exact exponent (zero when absent).
    cd coeff_at(const Rational& e) const;
    void set(const Rational& e, cd c);
    void validate() const;
};

struct JacobiSeries {
    Rational index{0};
    Lattice lattice;
    std::int64_t zeta_den = 1;
    std::map<std::pair<std::int64_t, std::int64_t>, cd> coeffs;
    Rational truncation{0};

    Rational q_exponent(std::int64_t n) const { return lattice.exponent(n); }
    Rational z_exponent(std::int64_t r) const { return Rational(r, zeta_den); }
    std::optional<Rational> valuation() const;
    bool is_zero() const { return coeffs.empty(); }
    cd coeff_at(const Rational& qe, const Rational& ze) const;
    void set(const Rational& qe, const Rational& ze, cd c);
    void validate() const;
};

enum class TruncationRule {
    MinOrder,        // min of the two truncation orders (clamped when a valuation is negative)
    ValuationAware,  // min(T_a + v_b, T_b + v_a)
};

struct EvalOptions {
    double im_floor = 0.05;
};

struct EvalResult {
    cd value;
    double tail_bound = 0.0;
};

FourierSeries series_mul(const FourierSeries& a, const FourierSeries& b,
                         TruncationRule rule = TruncationRule::MinOrder);
JacobiSeries series_mul(const JacobiSeries& a, const JacobiSeries& b,
                        TruncationRule rule = TruncationRule::MinOrder);
JacobiSeries series_mul(const FourierSeries& a, const JacobiSeries& b,
                        TruncationRule rule = TruncationRule::MinOrder);

FourierSeries series_add(const FourierSeries& a, const FourierSeries& b);
JacobiSeries series_add(const JacobiSeries& a, const JacobiSeries& b);
FourierSeries series_scale(const FourierSeries& a, cd s);
JacobiSeries series_scale(const JacobiSeries& a, cd s);
FourierSeries series_pow(const FourierSeries& a, int n);
FourierSeries retruncate(const FourierSeries& a, const Rational& order);
JacobiSeries retruncate(const JacobiSeries& a, const Rational& order);
// Drops coefficients with |c| <= floor; the truncation order is unchanged.
FourierSeries drop_small(const FourierSeries& a, double floor);

// Views a one-variable series as a Jacobi series of index 0 with only zeta^0 terms.
JacobiSeries promote(const FourierSeries& a);
// Rewrites zeta exponents over the smallest common denominator.
JacobiSeries normalize_zeta(const JacobiSeries& a);

EvalResult series_eval(const FourierSeries& f, cd tau, const EvalOptions& opt = {});
EvalResult jacobi_eval(const JacobiSeries& f, cd tau, cd z, const EvalOptions& opt = {});

// q-expansion of eta^h, exponents up to `truncation`.
FourierSeries eta_series(int h, const Rational& truncation);

nlohmann::json to_json(const FourierSeries& f);
nlohmann::json to_json(const JacobiSeries& f);
FourierSeries fourier_from_json(const nlohmann::json& j);
JacobiSeries jacobi_from_json(const nlohmann::json& j);
nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

}  // namespace ecj
