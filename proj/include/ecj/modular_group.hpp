#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ecj/rational.hpp"

namespace ecj {

struct GroupElement {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static GroupElement identity() { return {1, 0, 0, 1}; }
    static GroupElement S() { return {0, -1, 1, 0}; }
    static GroupElement T(std::int64_t n = 1) { return {1, n, 0, 1}; }
    static GroupElement minus_identity() { return {-1, 0, 0, -1}; }
    // Throws std::invalid_argument unless ad - bc = 1.
    static GroupElement make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    GroupElement inverse() const { return {d, -b, -c, a}; }
    GroupElement negated() const { return {-a, -b, -c, -d}; }
    friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

    std::string str() const;                      // "a,b,c,d"
    static GroupElement parse(std::string_view);  // "a,b,c,d" or an S/T word
};

enum class Gen { S, T };

struct Syllable {
    Gen gen;
    std::int64_t exp;
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Word = std::vector<Syllable>;

Word decompose_word(const GroupElement& g);
GroupElement word_product(const Word& w);
std::string word_str(const Word& w);  // "S T^3 S T^-2"; "I" for the empty word
Word parse_word(std::string_view text);
// Appends a syllable, merging with the tail and reducing S exponents mod 4.
void word_push(Word& w, Syllable s);

std::int64_t mu_norm(const GroupElement& g);
cd act_moebius(const GroupElement& g, cd tau);
// c*tau + d, built so the imaginary part is +0 when c = 0.
cd cocycle_factor(const GroupElement& g, cd tau);
// Principal power z^k = exp(k Log z); integer k is evaluated by repeated multiplication.
cd principal_pow(cd z, double k);
cd automorphy(const GroupElement& g, cd tau, double k);

// s(d, c) for c > 0 and gcd(d, c) = 1, exact.
Rational dedekind_sum(std::int64_t d, std::int64_t c);
// Rational t with eta multiplier eps(g) = e(t), t reduced to [0, 1).
Rational eta_phase(const GroupElement& g);
cd eta_multiplier(const GroupElement& g);

// chi(g) = eps(g)^eta_power, carrying an attached weight.
struct MultiplierSystem {
    double weight = 0.0;
    int eta_power = 0;

    Rational phase(const GroupElement& g) const { return (Rational(eta_power) * eta_phase(g)).frac(); }
    cd operator()(const GroupElement& g) const { return unit_phase(phase(g)); }
    MultiplierSystem conj() const { return {weight, -eta_power}; }
    MultiplierSystem times(const MultiplierSystem& o) const {
        return {weight + o.weight, eta_power + o.eta_power};
    }
    static MultiplierSystem trivial(double w = 0.0) { return {w, 0}; }
    static MultiplierSystem eta_power_of(int h) { return {h / 2.0, h}; }
};

struct GroupPair {
    GroupElement g1, g2;
};

double multiplier_consistency_check(const MultiplierSystem& chi, const std::vector<GroupPair>& pairs,
                                    const std::vector<cd>& taus);

struct MetaplecticElement {
    GroupElement gamma;
    int branch = 1;  // +1 selects the principal square root of c*tau + d
    cd phi(cd tau) const { return static_cast<double>(branch) * principal_pow(cocycle_factor(gamma, tau), 0.5); }
    // (g1, p1)(g2, p2) = (g1 g2, p1(g2 tau) p2(tau)); the branch is read off at tau.
    static MetaplecticElement compose(const MetaplecticElement& x, const MetaplecticElement& y, cd tau);
};

struct Cusp {
    bool infinite = true;
    Rational value{0};
    static Cusp infinity() { return {}; }
    static Cusp at(const Rational& r) { return {false, r}; }
    std::string str() const { return infinite ? "oo" : value.str(); }
    friend bool operator==(const Cusp&, const Cusp&) = default;
};

Cusp act_cusp(const GroupElement& g, const Cusp& x);

// Extended gcd: returns (g, x, y) with a x + b y = g >= 0.
struct Egcd {
    std::int64_t g, x, y;
};
Egcd extended_gcd(std::int64_t a, std::int64_t b);

// Random element with every entry bounded by `bound` in absolute value.
GroupElement random_element(std::mt19937_64& rng, std::int64_t bound);

}  // namespace ecj
