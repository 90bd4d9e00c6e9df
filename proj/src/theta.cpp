#include "ecj/theta.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace ecj {

namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t class_rep(std::int64_t mu, std::int64_t m) { return pos_mod(mu, 2 * m); }

// Sum of e(r^2 τ/4m + r z) over r ≡ mu (2m), each term scaled by e^{-log_scale}.
cd theta_sum(std::int64_t m, std::int64_t mu, cd tau, cd z, bool normalized) {
    const double u = tau.real(), v = tau.imag(), x = z.real(), y = z.imag();
    if (!(v > 0)) throw std::domain_error("theta evaluation requires Im tau > 0");
    const double fm = static_cast<double>(m);
    const double center = -2.0 * fm * y / v;
    const std::int64_t step = 2 * m;
    const std::int64_t r0 = class_rep(mu, m) + step * static_cast<std::int64_t>(std::floor((center - class_rep(mu, m)) / step));
    const double shift = normalized ? 0.0 : 2.0 * kPi * fm * y * y / v;
    auto term = [&](std::int64_t r) -> std::pair<cd, double> {
        const double rd = static_cast<double>(r);
        const double d = rd - center;
        const double logmag = -2.0 * kPi * v / (4.0 * fm) * d * d + shift;
        // Phase r^2 u / 4m + r x, reduced modulo 1 before scaling.
        double ph = std::fmod(rd * rd / (4.0 * fm) * u, 1.0) + std::fmod(rd * x, 1.0);
        return {std::polar(std::exp(logmag), 2.0 * kPi * ph), logmag};
    };
    cd total = 0.0;
    const double cutoff = shift - 45.0;
    for (int dir : {0, 1}) {
        for (std::int64_t k = 0;; ++k) {
            std::int64_t r = dir == 0 ? r0 - k * step : r0 + (k + 1) * step;
            auto [val, logmag] = term(r);
            total += val;
            if (logmag < cutoff && k > 2) break;
        }
    }
    return total;
}

}  // namespace

JacobiSeries theta_series(std::int64_t m, std::int64_t mu, const Rational& truncation) {
    if (m < 1) throw std::invalid_argument("theta_series: m must be positive");
    JacobiSeries th;
    th.index = Rational(m);
    th.zeta_den = 1;
    th.truncation = truncation;
    const std::int64_t base = class_rep(mu, m);
    th.lattice = Lattice::through(Rational(base * base, 4 * m), 1);
    for (std::int64_t sgn : {1, -1}) {
        for (std::int64_t t = 0;; ++t) {
            std::int64_t r = sgn > 0 ? base + 2 * m * t : base - 2 * m * (t + 1);
            Rational e(checked_mul(r, r), 4 * m);
            if (e > truncation) break;
            th.set(e, Rational(r), 1.0);
        }
    }
    return th;
}

cd theta_value(std::int64_t m, std::int64_t mu, cd tau, cd z) { return theta_sum(m, mu, tau, z, false); }

cd theta_value_normalized(std::int64_t m, std::int64_t mu, cd tau, cd z) { return theta_sum(m, mu, tau, z, true); }

double mixed_residual(cd x, cd y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); }

double mixed_residual(const Vec& x, const Vec& y) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) worst = std::max(worst, mixed_residual(x(i), y(i)));
    return worst;
}

ThetaLawReport theta_transform_check(std::int64_t m, const std::vector<std::pair<cd, cd>>& samples) {
    ThetaLawReport rep;
    const std::int64_t n = 2 * m;
    const double fm = static_cast<double>(m);
    for (const auto& [tau, z] : samples) {
        std::vector<cd> vals(n);
        for (std::int64_t b = 0; b < n; ++b) vals[b] = theta_value(m, b, tau, z);
        cd pref = std::pow(static_cast<double>(n), -0.5) * principal_pow(tau / cd(0, 1), 0.5) *
                  std::exp(cd(0, 2 * kPi) * fm * z * z / tau);
        for (std::int64_t a = 0; a < n; ++a) {
            cd lhs = theta_value(m, a, -1.0 / tau, z / tau);
            cd sum = 0.0;
            for (std::int64_t b = 0; b < n; ++b) sum += unit_phase(-Rational(2 * m) * Rational(b * a, n * n)) * vals[b];
            rep.s_law = std::max(rep.s_law, mixed_residual(lhs, pref * sum));
            cd tl = theta_value(m, a, tau + 1.0, z);
            cd tr = unit_phase(Rational(m) * Rational(a * a, n * n)) * vals[a];
            rep.t_law = std::max(rep.t_law, mixed_residual(tl, tr));
        }
    }
    return rep;
}

VVForm decompose(const JacobiSeries& f0, std::int64_t m, double jacobi_weight, const MultiplierSystem& chi) {
    JacobiSeries f = normalize_zeta(f0);
    if (f.index != Rational(m)) throw std::invalid_argument("decompose: series index does not match m");
    if (f.zeta_den != 1) throw std::invalid_argument("decompose: zeta exponents must be integers");
    VVForm out;
    out.m = m;
    out.weight = jacobi_weight - 0.5;
    out.rep = build_generators(m);
    out.multiplier = chi_double_prime(chi, Parity::Odd, out.rep.chi_prime);
    const std::int64_t n = 2 * m;
    const Rational four_m(4 * m);
    const Rational base = f.lattice.exponent(0);
    for (std::int64_t mu = 0; mu < n; ++mu) {
        std::int64_t mt = std::min(mu, n - mu);
        FourierSeries comp;
        comp.lattice = Lattice::through(base - Rational(mu * mu) / four_m, f.lattice.lambda);
        comp.truncation = f.truncation - Rational(mt * mt) / four_m;
        out.components.push_back(comp);
    }
    for (const auto& [key, c] : f.coeffs) {
        Rational alpha = f.q_exponent(key.first);
        std::int64_t r = key.second;
        std::int64_t mu = pos_mod(r, n);
        FourierSeries& comp = out.components[mu];
        Rational e = alpha - Rational(checked_mul(r, r)) / four_m;
        if (e > comp.truncation) continue;
        std::int64_t idx = comp.lattice.index_of(e);
        auto it = comp.coeffs.find(idx);
        if (it == comp.coeffs.end()) {
            comp.coeffs[idx] = c;
        } else if (std::abs(it->second - c) > 1e-9 * std::max(1.0, std::abs(c))) {
            throw std::runtime_error("decompose: coefficient at (n, r) = (" + alpha.str() + ", " + std::to_string(r) +
                                     ") disagrees with its class; the series is not elliptic invariant");
        }
    }
    // Every representative below the truncation must be present with the class value.
    for (std::int64_t mu = 0; mu < n; ++mu) {
        const FourierSeries& comp = out.components[mu];
        for (const auto& [idx, c] : comp.coeffs) {
            Rational e = comp.exponent(idx);
            for (int sgn : {1, -1}) {
                for (std::int64_t t = 0;; ++t) {
                    std::int64_t r = sgn > 0 ? mu + n * t : mu - n * (t + 1);
                    Rational alpha = e + Rational(checked_mul(r, r)) / four_m;
                    if (alpha > f.truncation) break;
                    cd have = f.coeff_at(alpha, Rational(r));
                    if (std::abs(have - c) > 1e-9 * std::max(1.0, std::abs(c)))
                        throw std::runtime_error("decompose: coefficient at (n, r) = (" + alpha.str() + ", " +
                                                 std::to_string(r) + ") is missing or inconsistent with its class");
                }
            }
        }
    }
    return out;
}

VVForm decompose(const JacobiForm& form) { return decompose(form.series, form.index, form.weight, form.multiplier); }

JacobiSeries recompose(const VVForm& F) {
    const std::int64_t n = 2 * F.m;
    if (static_cast<std::int64_t>(F.components.size()) != n)
        throw std::invalid_argument("recompose: component count must be 2m");
    std::optional<Rational> target;
    for (std::int64_t mu = 0; mu < n; ++mu) {
        std::int64_t mt = std::min(mu, n - mu);
        Rational t = F.components[mu].truncation + Rational(mt * mt, 4 * F.m);
        target = target ? min(*target, t) : t;
    }
    JacobiSeries out;
    out.index = Rational(F.m);
    out.truncation = *target;
    for (std::int64_t mu = 0; mu < n; ++mu) {
        JacobiSeries th = theta_series(F.m, mu, *target + Rational(1));
        JacobiSeries term = series_mul(F.components[mu], th, TruncationRule::ValuationAware);
        term = retruncate(term, min(term.truncation, *target));
        out = mu == 0 ? term : series_add(out, term);
    }
    return out;
}

VecFn vv_evaluator(const VVForm& F, EvalOptions opt) {
    auto comps = std::make_shared<const std::vector<FourierSeries>>(F.components);
    return [comps, opt](cd tau) {
        Vec v(comps->size());
        for (std::size_t i = 0; i < comps->size(); ++i) v(i) = series_eval((*comps)[i], tau, opt).value;
        return v;
    };
}

Mat SlashType::rho(const GroupElement& g) const {
    Mat r = rep_element(rep, g).matrix;
    return conjugate_rep ? Mat(r.conjugate()) : r;
}

SlashType slash_type(const VVForm& F) { return {F.weight, F.multiplier, F.rep, false}; }

Vec vv_slash_value(const VecFn& F, const GroupElement& g, const SlashType& t, cd tau) {
    cd scal = std::conj(t.chi(g)) * principal_pow(cocycle_factor(g, tau), -t.weight);
    return scal * (t.rho(g).adjoint() * F(act_moebius(g, tau)));
}

VecFn vv_slash(VecFn F, const GroupElement& g, const SlashType& t) {
    Mat rinv = t.rho(g).adjoint();
    cd chibar = std::conj(t.chi(g));
    double w = t.weight;
    return [F = std::move(F), g, w, chibar, rinv](cd tau) -> Vec {
        cd scal = chibar * principal_pow(cocycle_factor(g, tau), -w);
        return scal * (rinv * F(act_moebius(g, tau)));
    };
}

double vv_transform_check(const VVForm& F, const GroupElement& g, const std::vector<cd>& samples) {
    VecFn f = vv_evaluator(F);
    const SlashType t = slash_type(F);
    double worst = 0.0;
    for (cd tau : samples)
        worst = std::max(worst, mixed_residual(f(tau), vv_slash_value(f, g, t, tau)));
    return worst;
}

nlohmann::json to_json(const VVForm& F) {
    nlohmann::json j;
    j["kind"] = "vvform";
    j["m"] = F.m;
    j["weight"] = F.weight;
    j["multiplier"] = {{"eta_power", F.multiplier.eta_power}, {"weight", F.multiplier.weight}};
    auto& comps = j["components"] = nlohmann::json::array();
    for (std::size_t mu = 0; mu < F.components.size(); ++mu)
        comps.push_back({{"a", rational_json(Rational(static_cast<std::int64_t>(mu), 2 * F.m))},
                         {"series", to_json(F.components[mu])}});
    return j;
}

VVForm vvform_from_json(const nlohmann::json& j) {
    VVForm F;
    F.m = j.at("m").get<std::int64_t>();
    F.weight = j.at("weight").get<double>();
    F.multiplier.eta_power = j.at("multiplier").at("eta_power").get<int>();
    F.multiplier.weight = j.at("multiplier").at("weight").get<double>();
    F.rep = build_generators(F.m);
    for (const auto& c : j.at("components")) F.components.push_back(fourier_from_json(c.at("series")));
    if (static_cast<std::int64_t>(F.components.size()) != 2 * F.m)
        throw std::invalid_argument("vvform: component count must be 2m");
    return F;
}

}  // namespace ecj
