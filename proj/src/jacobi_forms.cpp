#include "ecj/jacobi_forms.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace ecj {

LatticeElement lattice_act(const LatticeElement& X, const GroupElement& g) {
    return {checked_add(checked_mul(X.lambda, g.a), checked_mul(X.mu, g.c)),
            checked_add(checked_mul(X.lambda, g.b), checked_mul(X.mu, g.d))};
}

JacobiGroupElement operator*(const JacobiGroupElement& x, const JacobiGroupElement& y) {
    LatticeElement moved = lattice_act(x.X, y.gamma);
    return {x.gamma * y.gamma, {checked_add(moved.lambda, y.X.lambda), checked_add(moved.mu, y.X.mu)}};
}

JacobiSeries slash_elliptic(const JacobiSeries& f, const LatticeElement& X, const Rational& m) {
    if (X.lambda == 0 && X.mu == 0) return f;
    const Rational lam(X.lambda), mu(X.mu);
    Rational shift = Rational(2) * m * lam * Rational(f.zeta_den);
    if (!shift.is_integer()) throw std::invalid_argument("slash_elliptic: zeta shift is not on the zeta lattice");
    // Known region shrinks to (sqrt(T) - |λ| sqrt(m))^2 for non-negative discriminants.
    double t = std::max(f.truncation.to_double(), 0.0);
    double root = std::sqrt(t) - std::abs(lam.to_double()) * std::sqrt(m.to_double());
    double bound = root > 0 ? root * root : -1.0;
    constexpr std::int64_t kGrid = 24;
    Rational new_trunc(static_cast<std::int64_t>(std::floor(bound * kGrid - 1e-9)), kGrid);
    if (root <= 0) new_trunc = Rational(-1);

    std::int64_t lattice_den = checked_lcm(f.lattice.lambda, checked_lcm(f.zeta_den, m.den()));
    JacobiSeries out;
    out.index = f.index;
    out.zeta_den = f.zeta_den;
    out.truncation = min(new_trunc, f.truncation);
    const Rational base = f.lattice.exponent(0) + m * lam * lam;
    out.lattice = Lattice::through(base, lattice_den);
    for (const auto& [key, c] : f.coeffs) {
        Rational alpha = f.q_exponent(key.first);
        Rational s = f.z_exponent(key.second);
        Rational na = alpha + lam * s + m * lam * lam;
        if (na > out.truncation) continue;
        cd phase = unit_phase(m * mu * lam + s * mu);
        std::int64_t nr = checked_add(key.second, shift.num());
        out.coeffs[{out.lattice.index_of(na), nr}] += phase * c;
    }
    return out;
}

JacobiFn slash_elliptic(JacobiFn f, const LatticeElement& X, double m) {
    return [f = std::move(f), X, m](cd tau, cd z) {
        const double lam = static_cast<double>(X.lambda), mu = static_cast<double>(X.mu);
        cd arg = m * (lam * lam * tau + 2.0 * lam * z + mu * lam);
        return std::exp(cd(0, 2 * std::numbers::pi) * arg) * f(tau, z + lam * tau + mu);
    };
}

JacobiFn slash_modular(JacobiFn f, const GroupElement& g, double k, double m, const MultiplierSystem& chi) {
    cd chibar = std::conj(chi(g));
    return [f = std::move(f), g, k, m, chibar](cd tau, cd z) {
        cd j = cocycle_factor(g, tau);
        cd ell = std::exp(cd(0, -2 * std::numbers::pi) * (static_cast<double>(g.c) * m * z * z / j));
        return principal_pow(j, -k) * chibar * ell * f(act_moebius(g, tau), z / j);
    };
}

JacobiFn slash_jacobi(JacobiFn f, const JacobiGroupElement& gx, double k, double m, const MultiplierSystem& chi) {
    return slash_elliptic(slash_modular(std::move(f), gx.gamma, k, m, chi), gx.X, m);
}

JacobiFn evaluator(const JacobiSeries& f, EvalOptions opt) {
    auto shared = std::make_shared<const JacobiSeries>(f);
    return [shared, opt](cd tau, cd z) { return jacobi_eval(*shared, tau, z, opt).value; };
}

JacobiSeries odd_theta_series(const Rational& truncation) {
    JacobiSeries a;
    a.index = Rational(1, 2);
    a.lattice = Lattice{Rational(1, 8), 1};
    a.zeta_den = 2;
    a.truncation = truncation;
    for (std::int64_t n = 0;; ++n) {
        Rational e(checked_mul(2 * n + 1, 2 * n + 1), 8);
        if (e > truncation) break;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        a.set(e, Rational(2 * n + 1, 2), sign);
        a.set(e, Rational(-(2 * n + 1), 2), -sign);  // n -> -1 - n flips the sign
    }
    return a;
}

JacobiForm build_testform(const Rational& truncation) {
    const Rational v_eta(7, 24), v_a2(1, 4), v_a(1, 8);
    FourierSeries eta7 = eta_series(7, truncation - v_a2);
    JacobiSeries a = odd_theta_series(truncation - v_eta - v_a);
    JacobiSeries a2 = series_mul(a, a, TruncationRule::ValuationAware);
    JacobiForm form;
    form.series = series_mul(eta7, a2, TruncationRule::ValuationAware);
    form.weight = 4.5;
    form.index = 1;
    form.multiplier = MultiplierSystem{6.5, 13};
    form.cuspidal = check_cuspidal(form.series, Rational(1)).cuspidal;
    return form;
}

CuspidalVerdict check_cuspidal(const JacobiSeries& f, const Rational& m) {
    CuspidalVerdict v;
    for (const auto& [key, c] : f.coeffs) {
        Rational alpha = f.q_exponent(key.first);
        Rational s = f.z_exponent(key.second);
        Rational disc = Rational(4) * m * alpha - s * s;
        if (!v.min_discriminant || disc < *v.min_discriminant) {
            v.min_discriminant = disc;
            v.witness = std::make_pair(alpha, s);
        }
    }
    v.cuspidal = !v.min_discriminant || *v.min_discriminant > Rational(0);
    return v;
}

double elliptic_invariance_residual(const JacobiSeries& f, const Rational& m, const std::vector<LatticeElement>& Xs) {
    double worst = 0.0;
    for (const auto& X : Xs) {
        JacobiSeries g = slash_elliptic(f, X, m);
        for (const auto& [key, c] : g.coeffs)
            worst = std::max(worst, std::abs(c - f.coeff_at(g.q_exponent(key.first), g.z_exponent(key.second))));
        for (const auto& [key, c] : f.coeffs) {
            Rational alpha = f.q_exponent(key.first);
            if (alpha > g.truncation) continue;
            worst = std::max(worst, std::abs(c - g.coeff_at(alpha, f.z_exponent(key.second))));
        }
    }
    return worst;
}

nlohmann::json to_json(const JacobiForm& f) {
    return {{"series", to_json(f.series)},
            {"weight", f.weight},
            {"index", f.index},
            {"multiplier", {{"weight", f.multiplier.weight}, {"eta_power", f.multiplier.eta_power}}},
            {"cuspidal", f.cuspidal}};
}

JacobiForm jacobiform_from_json(const nlohmann::json& j) {
    JacobiForm f;
    f.series = jacobi_from_json(j.at("series"));
    f.weight = j.at("weight").get<double>();
    f.index = j.at("index").get<std::int64_t>();
    f.multiplier.weight = j.at("multiplier").at("weight").get<double>();
    f.multiplier.eta_power = j.at("multiplier").at("eta_power").get<int>();
    f.cuspidal = check_cuspidal(f.series, Rational(f.index)).cuspidal;
    return f;
}

}  // namespace ecj
