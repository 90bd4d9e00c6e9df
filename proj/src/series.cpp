#include "ecj/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ecj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i e tau} with the real part of e*u reduced modulo 1 first.
cd exp_term(const Rational& e, cd tau) {
    double ed = e.to_double();
    double x = ed * tau.real();
    x -= std::round(x);
    return std::polar(std::exp(-kTwoPi * ed * tau.imag()), kTwoPi * x);
}

std::int64_t rescale(std::int64_t r, std::int64_t from, std::int64_t to) {
    return checked_mul(r, to / from);
}

}  // namespace

// ---------------------------------------------------------------- Lattice

std::int64_t Lattice::index_of(const Rational& e) const {
    Rational n = e * Rational(lambda) - kappa;
    if (!n.is_integer()) throw std::invalid_argument("exponent " + e.str() + " is not on the lattice");
    return n.num();
}

bool Lattice::contains(const Rational& e) const { return (e * Rational(lambda) - kappa).is_integer(); }

Lattice Lattice::through(const Rational& e, std::int64_t lam) {
    if (lam <= 0) throw std::invalid_argument("lattice lambda must be positive");
    return Lattice{(e * Rational(lam)).frac(), lam};
}

Lattice Lattice::sum(const Lattice& a, const Lattice& b) {
    std::int64_t lam = checked_lcm(a.lambda, b.lambda);
    Rational off = a.kappa / Rational(a.lambda) + b.kappa / Rational(b.lambda);
    return through(off, lam);
}

Lattice Lattice::join(const Lattice& a, const Lattice& b) {
    std::int64_t lam = checked_lcm(a.lambda, b.lambda);
    Rational ea = a.kappa / Rational(a.lambda);
    Rational eb = b.kappa / Rational(b.lambda);
    Rational delta = (ea - eb) * Rational(lam);
    lam = checked_mul(lam, delta.den());
    return through(ea, lam);
}

// ---------------------------------------------------------------- FourierSeries

std::optional<Rational> FourierSeries::valuation() const {
    if (coeffs.empty()) return std::nullopt;
    return exponent(coeffs.begin()->first);
}

cd FourierSeries::coeff_at(const Rational& e) const {
    if (!lattice.contains(e)) return 0.0;
    auto it = coeffs.find(lattice.index_of(e));
    return it == coeffs.end() ? cd(0.0) : it->second;
}

void FourierSeries::set(const Rational& e, cd c) {
    if (e > truncation) throw std::invalid_argument("exponent above truncation order");
    std::int64_t n = lattice.index_of(e);
    if (c == cd(0.0))
        coeffs.erase(n);
    else
        coeffs[n] = c;
}

void FourierSeries::validate() const {
    if (lattice.lambda <= 0) throw std::invalid_argument("lambda must be positive");
    if (lattice.kappa < Rational(0) || lattice.kappa >= Rational(1))
        throw std::invalid_argument("kappa must lie in [0,1)");
    for (const auto& [n, c] : coeffs)
        if (exponent(n) > truncation)
            throw std::invalid_argument("stored exponent " + exponent(n).str() + " exceeds truncation");
}

// ---------------------------------------------------------------- JacobiSeries

std::optional<Rational> JacobiSeries::valuation() const {
    if (coeffs.empty()) return std::nullopt;
    return q_exponent(coeffs.begin()->first.first);
}

cd JacobiSeries::coeff_at(const Rational& qe, const Rational& ze) const {
    if (!lattice.contains(qe)) return 0.0;
    Rational r = ze * Rational(zeta_den);
    if (!r.is_integer()) return 0.0;
    auto it = coeffs.find({lattice.index_of(qe), r.num()});
    return it == coeffs.end() ? cd(0.0) : it->second;
}

void JacobiSeries::set(const Rational& qe, const Rational& ze, cd c) {
    if (qe > truncation) throw std::invalid_argument("exponent above truncation order");
    Rational r = ze * Rational(zeta_den);
    if (!r.is_integer()) throw std::invalid_argument("zeta exponent " + ze.str() + " not representable");
    auto key = std::make_pair(lattice.index_of(qe), r.num());
    if (c == cd(0.0))
        coeffs.erase(key);
    else
        coeffs[key] = c;
}

void JacobiSeries::validate() const {
    if (lattice.lambda <= 0 || zeta_den <= 0) throw std::invalid_argument("lambda and zeta_den must be positive");
    if (lattice.kappa < Rational(0) || lattice.kappa >= Rational(1))
        throw std::invalid_argument("kappa must lie in [0,1)");
    for (const auto& [key, c] : coeffs)
        if (q_exponent(key.first) > truncation)
            throw std::invalid_argument("stored exponent " + q_exponent(key.first).str() + " exceeds truncation");
}

// ---------------------------------------------------------------- arithmetic

namespace {

Rational product_truncation(const Rational& ta, std::optional<Rational> va, const Rational& tb,
                            std::optional<Rational> vb, TruncationRule rule) {
    if (rule == TruncationRule::ValuationAware) {
        if (va && vb) return min(ta + *vb, tb + *va);
        if (va) return tb + *va;
        if (vb) return ta + *vb;
        return min(ta, tb);
    }
    Rational t = min(ta, tb);
    if (vb) t = min(t, ta + *vb);
    if (va) t = min(t, tb + *va);
    return t;
}

}  // namespace

FourierSeries series_mul(const FourierSeries& a, const FourierSeries& b, TruncationRule rule) {
    FourierSeries out;
    out.lattice = Lattice::sum(a.lattice, b.lattice);
    out.truncation = product_truncation(a.truncation, a.valuation(), b.truncation, b.valuation(), rule);
    for (const auto& [na, ca] : a.coeffs) {
        Rational ea = a.exponent(na);
        for (const auto& [nb, cb] : b.coeffs) {
            Rational e = ea + b.exponent(nb);
            if (e > out.truncation) break;
            out.coeffs[out.lattice.index_of(e)] += ca * cb;
        }
    }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == cd(0.0); });
    return out;
}

JacobiSeries series_mul(const JacobiSeries& a, const JacobiSeries& b, TruncationRule rule) {
    JacobiSeries out;
    out.index = a.index + b.index;
    out.lattice = Lattice::sum(a.lattice, b.lattice);
    out.zeta_den = checked_lcm(a.zeta_den, b.zeta_den);
    out.truncation = product_truncation(a.truncation, a.valuation(), b.truncation, b.valuation(), rule);
    for (const auto& [ka, ca] : a.coeffs) {
        Rational ea = a.q_exponent(ka.first);
        std::int64_t ra = rescale(ka.second, a.zeta_den, out.zeta_den);
        for (const auto& [kb, cb] : b.coeffs) {
            Rational e = ea + b.q_exponent(kb.first);
            if (e > out.truncation) break;
            std::int64_t r = checked_add(ra, rescale(kb.second, b.zeta_den, out.zeta_den));
            out.coeffs[{out.lattice.index_of(e), r}] += ca * cb;
        }
    }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == cd(0.0); });
    return normalize_zeta(out);
}

JacobiSeries series_mul(const FourierSeries& a, const JacobiSeries& b, TruncationRule rule) {
    return series_mul(promote(a), b, rule);
}

FourierSeries series_add(const FourierSeries& a, const FourierSeries& b) {
    FourierSeries out;
    out.lattice = Lattice::join(a.lattice, b.lattice);
    out.truncation = min(a.truncation, b.truncation);
    for (const FourierSeries* s : {&a, &b})
        for (const auto& [n, c] : s->coeffs) {
            Rational e = s->exponent(n);
            if (e <= out.truncation) out.coeffs[out.lattice.index_of(e)] += c;
        }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == cd(0.0); });
    return out;
}

JacobiSeries series_add(const JacobiSeries& a, const JacobiSeries& b) {
    if (a.index != b.index && !a.is_zero() && !b.is_zero())
        throw std::invalid_argument("cannot add Jacobi series of indices " + a.index.str() + " and " + b.index.str());
    JacobiSeries out;
    out.index = a.is_zero() ? b.index : a.index;
    out.lattice = Lattice::join(a.lattice, b.lattice);
    out.zeta_den = checked_lcm(a.zeta_den, b.zeta_den);
    out.truncation = min(a.truncation, b.truncation);
    for (const JacobiSeries* s : {&a, &b})
        for (const auto& [k, c] : s->coeffs) {
            Rational e = s->q_exponent(k.first);
            if (e <= out.truncation)
                out.coeffs[{out.lattice.index_of(e), rescale(k.second, s->zeta_den, out.zeta_den)}] += c;
        }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == cd(0.0); });
    return normalize_zeta(out);
}

FourierSeries series_scale(const FourierSeries& a, cd s) {
    FourierSeries out = a;
    if (s == cd(0.0)) {
        out.coeffs.clear();
        return out;
    }
    for (auto& [n, c] : out.coeffs) c *= s;
    return out;
}

JacobiSeries series_scale(const JacobiSeries& a, cd s) {
    JacobiSeries out = a;
    if (s == cd(0.0)) {
        out.coeffs.clear();
        return out;
    }
    for (auto& [k, c] : out.coeffs) c *= s;
    return out;
}

FourierSeries series_pow(const FourierSeries& a, int n) {
    if (n < 0) throw std::invalid_argument("negative power of a series");
    FourierSeries out;
    out.truncation = a.truncation;
    out.coeffs[0] = 1.0;
    if (out.truncation < Rational(0)) out.coeffs.clear();
    for (int i = 0; i < n; ++i) out = series_mul(out, a);
    return out;
}

FourierSeries retruncate(const FourierSeries& a, const Rational& order) {
    if (order > a.truncation) throw std::invalid_argument("retruncate cannot raise the truncation order");
    FourierSeries out = a;
    out.truncation = order;
    std::erase_if(out.coeffs, [&](const auto& kv) { return out.exponent(kv.first) > order; });
    return out;
}

JacobiSeries retruncate(const JacobiSeries& a, const Rational& order) {
    if (order > a.truncation) throw std::invalid_argument("retruncate cannot raise the truncation order");
    JacobiSeries out = a;
    out.truncation = order;
    std::erase_if(out.coeffs, [&](const auto& kv) { return out.q_exponent(kv.first.first) > order; });
    return out;
}

FourierSeries drop_small(const FourierSeries& a, double floor) {
    FourierSeries out = a;
    std::erase_if(out.coeffs, [&](const auto& kv) { return std::abs(kv.second) <= floor; });
    return out;
}

JacobiSeries promote(const FourierSeries& a) {
    JacobiSeries out;
    out.index = Rational(0);
    out.lattice = a.lattice;
    out.zeta_den = 1;
    out.truncation = a.truncation;
    for (const auto& [n, c] : a.coeffs) out.coeffs[{n, 0}] = c;
    return out;
}

JacobiSeries normalize_zeta(const JacobiSeries& a) {
    std::int64_t g = a.zeta_den;
    for (const auto& [k, c] : a.coeffs) g = std::gcd(g, k.second);
    if (g <= 1) return a;
    JacobiSeries out = a;
    out.zeta_den = a.zeta_den / g;
    out.coeffs.clear();
    for (const auto& [k, c] : a.coeffs) out.coeffs[{k.first, k.second / g}] = c;
    return out;
}

// ---------------------------------------------------------------- evaluation

EvalResult series_eval(const FourierSeries& f, cd tau, const EvalOptions& opt) {
    double v = tau.imag();
    if (!(v >= opt.im_floor))
        throw std::domain_error("series_eval: Im tau = " + std::to_string(v) + " is below the floor " +
                                std::to_string(opt.im_floor));
    EvalResult res{0.0, 0.0};
    double band = 0.0;
    Rational band_lo = f.truncation - Rational(1);
    for (const auto& [n, c] : f.coeffs) {
        Rational e = f.exponent(n);
        res.value += c * exp_term(e, tau);
        if (e > band_lo) band = std::max(band, std::abs(c));
    }
    double x = std::exp(-kTwoPi * v / static_cast<double>(f.lattice.lambda));
    res.tail_bound = band * std::exp(-kTwoPi * v * f.truncation.to_double()) * x / (1.0 - x) * 2.0;
    return res;
}

EvalResult jacobi_eval(const JacobiSeries& f, cd tau, cd z, const EvalOptions& opt) {
    double v = tau.imag();
    if (!(v >= opt.im_floor))
        throw std::domain_error("jacobi_eval: Im tau = " + std::to_string(v) + " is below the floor " +
                                std::to_string(opt.im_floor));
    double m = f.index.to_double();
    if (m > 0) {
        double t = std::max(f.truncation.to_double(), 0.0);
        double ybound = (v / 4.0) * std::sqrt(t / m);
        if (std::abs(z.imag()) > ybound)
            throw std::domain_error("jacobi_eval: |Im z| = " + std::to_string(std::abs(z.imag())) +
                                    " exceeds the certified bound " + std::to_string(ybound));
    }
    EvalResult res{0.0, 0.0};
    double band = 0.0;
    Rational band_lo = f.truncation - Rational(1);
    for (const auto& [k, c] : f.coeffs) {
        Rational e = f.q_exponent(k.first);
        cd zt = exp_term(f.z_exponent(k.second), z);
        res.value += c * exp_term(e, tau) * zt;
        if (e > band_lo) band = std::max(band, std::abs(c * zt));
    }
    double x = std::exp(-kTwoPi * v / static_cast<double>(f.lattice.lambda));
    res.tail_bound = band * std::exp(-kTwoPi * v * f.truncation.to_double()) * x / (1.0 - x) * 2.0;
    return res;
}

// ---------------------------------------------------------------- eta

FourierSeries eta_series(int h, const Rational& truncation) {
    if (h < 0) throw std::invalid_argument("eta_series: power must be non-negative");
    Rational lead(h, 24);
    if (truncation < lead) throw std::invalid_argument("eta_series: truncation below the leading exponent");
    std::int64_t deg = (truncation - lead).floor();
    // Euler product via pentagonal numbers, then the h-th power in integers.
    std::vector<double> p(deg + 1, 0.0);
    p[0] = 1.0;
    for (std::int64_t k = 1; k * (3 * k - 1) / 2 <= deg; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        p[k * (3 * k - 1) / 2] += sign;
        if (k * (3 * k + 1) / 2 <= deg) p[k * (3 * k + 1) / 2] += sign;
    }
    std::vector<double> acc(deg + 1, 0.0);
    acc[0] = 1.0;
    for (int i = 0; i < h; ++i) {
        std::vector<double> nx(deg + 1, 0.0);
        for (std::int64_t x = 0; x <= deg; ++x) {
            if (acc[x] == 0.0) continue;
            for (std::int64_t y = 0; x + y <= deg; ++y) nx[x + y] += acc[x] * p[y];
        }
        acc.swap(nx);
    }
    FourierSeries out;
    out.lattice = Lattice::through(lead, 1);
    out.truncation = truncation;
    for (std::int64_t j = 0; j <= deg; ++j)
        if (acc[j] != 0.0) out.coeffs[out.lattice.index_of(lead + Rational(j))] = acc[j];
    return out;
}

// ---------------------------------------------------------------- JSON

nlohmann::json rational_json(const Rational& r) { return nlohmann::json::array({r.num(), r.den()}); }

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_array() && j.size() == 2) return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("malformed rational in JSON");
}

nlohmann::json to_json(const FourierSeries& f) {
    nlohmann::json j;
    j["kind"] = "fourier";
    j["kappa"] = rational_json(f.lattice.kappa);
    j["lambda"] = f.lattice.lambda;
    j["truncation"] = rational_json(f.truncation);
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& [n, c] : f.coeffs) arr.push_back({n, c.real(), c.imag()});
    return j;
}

nlohmann::json to_json(const JacobiSeries& f) {
    nlohmann::json j;
    j["kind"] = "jacobi";
    j["index"] = rational_json(f.index);
    j["kappa"] = rational_json(f.lattice.kappa);
    j["lambda"] = f.lattice.lambda;
    j["zeta_den"] = f.zeta_den;
    j["truncation"] = rational_json(f.truncation);
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& [k, c] : f.coeffs) arr.push_back({k.first, k.second, c.real(), c.imag()});
    return j;
}

FourierSeries fourier_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "fourier") throw std::invalid_argument("expected a fourier series document");
    FourierSeries f;
    f.lattice.kappa = rational_from_json(j.at("kappa"));
    f.lattice.lambda = j.at("lambda").get<std::int64_t>();
    f.truncation = rational_from_json(j.at("truncation"));
    for (const auto& e : j.at("coeffs"))
        f.coeffs[e.at(0).get<std::int64_t>()] = cd(e.at(1).get<double>(), e.at(2).get<double>());
    f.validate();
    return f;
}

JacobiSeries jacobi_from_json(const nlohmann::json& j) {
    if (j.at("kind") != "jacobi") throw std::invalid_argument("expected a jacobi series document");
    JacobiSeries f;
    f.index = rational_from_json(j.at("index"));
    f.lattice.kappa = rational_from_json(j.at("kappa"));
    f.lattice.lambda = j.at("lambda").get<std::int64_t>();
    f.zeta_den = j.at("zeta_den").get<std::int64_t>();
    f.truncation = rational_from_json(j.at("truncation"));
    for (const auto& e : j.at("coeffs"))
        f.coeffs[{e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>()}] =
            cd(e.at(2).get<double>(), e.at(3).get<double>());
    f.validate();
    return f;
}

}  // namespace ecj
