#include "ecj/modular_group.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ecj {

GroupElement GroupElement::make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
    if (det != 1) throw std::invalid_argument("matrix does not have determinant 1");
    return {a, b, c, d};
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    auto dot = [](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
        return checked_add(checked_mul(p, q), checked_mul(r, s));
    };
    return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c), dot(x.c, y.b, x.d, y.d)};
}

std::string GroupElement::str() const {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d);
}

namespace {

std::int64_t parse_int(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

GroupElement GroupElement::parse(std::string_view text) {
    if (text.find(',') == std::string_view::npos) return word_product(parse_word(text));
    std::int64_t v[4];
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t next = text.find(',', pos);
        if ((i < 3) != (next != std::string_view::npos)) throw std::invalid_argument("expected four entries a,b,c,d");
        v[i] = parse_int(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        pos = next + 1;
    }
    return make(v[0], v[1], v[2], v[3]);
}

// ---------------------------------------------------------------- words

void word_push(Word& w, Syllable s) {
    if (s.gen == Gen::S) s.exp = pos_mod(s.exp, 4);
    if (s.exp == 0) return;
    if (!w.empty() && w.back().gen == s.gen) {
        Syllable& t = w.back();
        t.exp = checked_add(t.exp, s.exp);
        if (t.gen == Gen::S) t.exp = pos_mod(t.exp, 4);
        if (t.exp == 0) w.pop_back();
        return;
    }
    w.push_back(s);
}

Word decompose_word(const GroupElement& g) {
    Word w;
    GroupElement cur = g;
    while (cur.c != 0) {
        // Nearest integer to a/c, so the next lower-left entry shrinks at least by half.
        std::int64_t q = floor_div(checked_add(checked_mul(2, cur.a), cur.c), checked_mul(2, cur.c));
        if (cur.c < 0) q = floor_div(checked_add(checked_mul(2, -cur.a), -cur.c), checked_mul(2, -cur.c));
        word_push(w, {Gen::T, q});
        word_push(w, {Gen::S, 1});
        GroupElement r = GroupElement::T(-q) * cur;
        cur = {r.c, r.d, -r.a, -r.b};  // S^{-1} r
    }
    if (cur.a == 1) {
        word_push(w, {Gen::T, cur.b});
    } else {
        word_push(w, {Gen::S, 2});
        word_push(w, {Gen::T, -cur.b});
    }
    return w;
}

GroupElement word_product(const Word& w) {
    GroupElement g = GroupElement::identity();
    for (const Syllable& s : w) {
        if (s.gen == Gen::T) {
            g = g * GroupElement::T(s.exp);
        } else {
            for (std::int64_t i = 0; i < pos_mod(s.exp, 4); ++i) g = g * GroupElement::S();
        }
    }
    return g;
}

std::string word_str(const Word& w) {
    if (w.empty()) return "I";
    std::string out;
    for (const Syllable& s : w) {
        if (!out.empty()) out += ' ';
        out += (s.gen == Gen::S) ? 'S' : 'T';
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
    };
    skip();
    if (text.substr(i) == "I") return w;
    while (i < text.size()) {
        char ch = text[i];
        if (ch != 'S' && ch != 'T') throw std::invalid_argument("unexpected character in word: '" + std::string(1, ch) + "'");
        ++i;
        std::int64_t e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t j = i;
            if (j < text.size() && (text[j] == '-' || text[j] == '+')) ++j;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            e = parse_int(text.substr(i, j - i));
            i = j;
        }
        word_push(w, {ch == 'S' ? Gen::S : Gen::T, e});
        skip();
    }
    return w;
}

// ---------------------------------------------------------------- actions

std::int64_t mu_norm(const GroupElement& g) {
    return checked_add(checked_add(checked_mul(g.a, g.a), checked_mul(g.b, g.b)),
                       checked_add(checked_mul(g.c, g.c), checked_mul(g.d, g.d)));
}

cd cocycle_factor(const GroupElement& g, cd tau) {
    double c = static_cast<double>(g.c);
    return {c * tau.real() + static_cast<double>(g.d), c * tau.imag()};
}

cd act_moebius(const GroupElement& g, cd tau) {
    cd num(static_cast<double>(g.a) * tau.real() + static_cast<double>(g.b), static_cast<double>(g.a) * tau.imag());
    return num / cocycle_factor(g, tau);
}

cd principal_pow(cd z, double k) {
    double r = std::round(k);
    if (r == k && std::abs(r) <= 64) {
        int n = static_cast<int>(r);
        cd base = n < 0 ? 1.0 / z : z;
        cd out = 1.0;
        for (int i = 0; i < std::abs(n); ++i) out *= base;
        return out;
    }
    return std::exp(k * std::log(z));
}

cd automorphy(const GroupElement& g, cd tau, double k) { return principal_pow(cocycle_factor(g, tau), k); }

// ---------------------------------------------------------------- eta multiplier

Egcd extended_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = floor_div(a, b);
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

Rational dedekind_sum(std::int64_t d, std::int64_t c) {
    if (c <= 0) throw std::invalid_argument("dedekind_sum requires c > 0");
    if (extended_gcd(d, c).g != 1) throw std::invalid_argument("dedekind_sum requires gcd(d, c) = 1");
    // Reciprocity: s(h,k) + s(k,h) = (h/k + k/h + 1/(hk))/12 - 1/4.
    Rational acc(0);
    int sign = 1;
    std::int64_t h = pos_mod(d, c), k = c;
    while (h != 0 && k != 1) {
        Rational hr(h), kr(k);
        Rational rhs = (hr / kr + kr / hr + Rational(1) / (hr * kr)) / Rational(12) - Rational(1, 4);
        acc += Rational(sign) * rhs;
        sign = -sign;
        std::int64_t nh = pos_mod(k, h);
        k = h;
        h = nh;
    }
    return acc;
}

Rational eta_phase(const GroupElement& g) {
    if (g.c == 0) {
        if (g.d == 1) return Rational(g.b, 24).frac();
        return (Rational(-g.b, 24) - Rational(1, 4)).frac();
    }
    if (g.c < 0) return (eta_phase(g.negated()) + Rational(1, 4)).frac();
    Rational t = (Rational(g.a + g.d) / Rational(checked_mul(12, g.c)) - dedekind_sum(g.d, g.c) - Rational(1, 4)) /
                 Rational(2);
    return t.frac();
}

cd eta_multiplier(const GroupElement& g) { return unit_phase(eta_phase(g)); }

double multiplier_consistency_check(const MultiplierSystem& chi, const std::vector<GroupPair>& pairs,
                                    const std::vector<cd>& taus) {
    double worst = 0.0;
    for (const auto& [g1, g2] : pairs) {
        GroupElement g3 = g1 * g2;
        for (cd tau : taus) {
            cd lhs = chi(g3) * automorphy(g3, tau, chi.weight);
            cd rhs = chi(g1) * chi(g2) * automorphy(g1, act_moebius(g2, tau), chi.weight) *
                     automorphy(g2, tau, chi.weight);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    return worst;
}

MetaplecticElement MetaplecticElement::compose(const MetaplecticElement& x, const MetaplecticElement& y, cd tau) {
    GroupElement g = x.gamma * y.gamma;
    cd val = x.phi(act_moebius(y.gamma, tau)) * y.phi(tau);
    cd principal = principal_pow(cocycle_factor(g, tau), 0.5);
    return {g, std::abs(val - principal) < std::abs(val + principal) ? 1 : -1};
}

Cusp act_cusp(const GroupElement& g, const Cusp& x) {
    if (x.infinite) {
        if (g.c == 0) return Cusp::infinity();
        return Cusp::at(Rational(g.a, g.c));
    }
    Rational den = Rational(g.c) * x.value + Rational(g.d);
    Rational num = Rational(g.a) * x.value + Rational(g.b);
    if (den == Rational(0)) return Cusp::infinity();
    return Cusp::at(num / den);
}

GroupElement random_element(std::mt19937_64& rng, std::int64_t bound) {
    if (bound < 1) throw std::invalid_argument("random_element bound must be positive");
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    for (;;) {
        std::int64_t c = dist(rng), d = dist(rng);
        Egcd e = extended_gcd(d, c);
        if (e.g != 1) continue;
        // a d - b c = 1 with a = x, b = -y; shift by multiples of (c, d).
        std::int64_t a0 = e.x, b0 = -e.y;
        std::vector<GroupElement> options;
        for (std::int64_t t = -4 * bound - 4; t <= 4 * bound + 4; ++t) {
            std::int64_t a = a0 + t * c, b = b0 + t * d;
            if (std::abs(a) <= bound && std::abs(b) <= bound) options.push_back({a, b, c, d});
        }
        if (options.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        return options[pick(rng)];
    }
}

}  // namespace ecj
