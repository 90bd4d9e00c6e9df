#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ecj {

using cd = std::complex<double>;

// Checked 64-bit helpers; any overflow throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t pos_mod(std::int64_t a, std::int64_t b);

// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }
    std::int64_t floor() const { return floor_div(num_, den_); }
    std::int64_t ceil() const { return -floor_div(-num_, den_); }
    // Representative of this value modulo 1 in [0, 1).
    Rational frac() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string str() const;
    // Accepts "p", "p/q" or "-p/q".
    static Rational parse(std::string_view text);

private:
    static Rational from_wide(__int128 n, __int128 d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// e^{2 pi i t}; values at multiples of 1/8 are returned exactly.
cd unit_phase(const Rational& t);

}  // namespace ecj
