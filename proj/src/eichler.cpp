#include "ecj/eichler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace ecj {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cd kI(0.0, 1.0);

cd i_pow(double p) { return std::polar(1.0, kPi * p / 2.0); }

// Far out on the ray the series underflows while the kernel overflows.
cd finite_or_zero(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()) ? z : cd(0.0); }

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool is_integer(double k) { return std::floor(k) == k && std::abs(k) < 1e6; }

// Lentz evaluation of the continued fraction for e^x x^{-s} Γ(s, x).
double gamma_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

// x^{-s} e^x γ(s, x) via the power series, s > 0.
double gamma_series(double s, double x) {
    double term = 1.0 / s, sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) return sum;
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

double exp_integral_e1(double x) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= -x / k;
        double add = -term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) + sum;
}

}  // namespace

double scaled_incomplete_gamma(double s, double x) {
    if (!(x > 0)) throw std::domain_error("incomplete gamma requires x > 0");
    if (x >= 1.0 && x >= s - 1.0) return std::pow(x, s) * gamma_cf(s, x);
    if (s > 0) {
        if (x < s + 1.0) return std::exp(x) * std::tgamma(s) - std::pow(x, s) * gamma_series(s, x);
        return std::pow(x, s) * gamma_cf(s, x);
    }
    // Small x and s <= 0: recurse upward in s; Γ(s,x) = (Γ(s+1,x) - x^s e^{-x}) / s.
    if (s == 0.0) return std::exp(x) * exp_integral_e1(x);
    double up = scaled_incomplete_gamma(s + 1.0, x);
    return (up - std::pow(x, s)) / s;
}

double incomplete_gamma_upper(double s, double x) {
    if (!(s > 0)) throw std::domain_error("incomplete_gamma_upper requires s > 0");
    return std::exp(-x) * scaled_incomplete_gamma(s, x);
}

PElement PElement::zero(int dim) {
    return {[dim](cd) { return Vec::Zero(dim).eval(); }, "0", GrowthParams{0.0, 0.5, 0.5, true}};
}

SlashType period_slash_type(const VVForm& g, double k, Convention conv) {
    SlashType t;
    t.weight = -k;
    t.rep = g.rep;
    if (conv == Convention::Conjugate) {
        t.chi = g.multiplier.conj();
        t.conjugate_rep = true;
    } else {
        t.chi = g.multiplier;
    }
    t.chi.weight = -k;
    return t;
}

// ---------------------------------------------------------------- Eichler integral

namespace {

void require_cusp_form(const VVForm& g) {
    for (const auto& comp : g.components)
        if (auto v = comp.valuation(); v && *v <= Rational(0))
            throw std::domain_error("Eichler integral requires a cusp form; found exponent " + v->str());
}

}  // namespace

Vec eichler_integral(const VVForm& g, double k, Convention conv, cd tau) {
    require_cusp_form(g);
    const int n = static_cast<int>(g.components.size());
    const double u = tau.real(), v = tau.imag();
    if (!(v > 0)) throw std::domain_error("eichler_integral requires Im tau > 0");
    const cd pref = -i_pow(k + 1.0);
    Vec out(n);
    for (int mu = 0; mu < n; ++mu) {
        const FourierSeries& f = g.components[mu];
        cd sum = 0.0;
        for (const auto& [idx, a] : f.coeffs) {
            double alpha = f.exponent(idx).to_double();
            double ta = 2.0 * kPi * alpha;
            double x = alpha * u;
            x -= std::round(x);
            cd ph = std::polar(1.0, 2.0 * kPi * x);
            if (conv == Convention::Conjugate)
                sum += a * ph * std::exp(-ta * v) * std::pow(ta, -(k + 1.0)) *
                       scaled_incomplete_gamma(k + 1.0, 2.0 * ta * v);
            else
                sum += a * ph * std::exp(-ta * v) * std::pow(ta, -(k + 1.0)) * std::tgamma(k + 1.0);
        }
        sum *= pref;
        out(mu) = conv == Convention::Conjugate ? std::conj(sum) : sum;
    }
    return out;
}

PElement eichler_element(const VVForm& g, double k, Convention conv) {
    require_cusp_form(g);
    auto shared = std::make_shared<const VVForm>(g);
    return {[shared, k, conv](cd tau) { return eichler_integral(*shared, k, conv, tau); },
            conv == Convention::Conjugate ? "conjugate Eichler integral" : "holomorphic Eichler integral",
            std::nullopt};
}

Vec eichler_integral_quadrature(const VVForm& g, double k, Convention conv, cd tau) {
    require_cusp_form(g);
    const int n = static_cast<int>(g.components.size());
    const double u = tau.real(), v = tau.imag();
    boost::math::quadrature::exp_sinh<double> integrator;
    Vec out(n);
    for (int mu = 0; mu < n; ++mu) {
        const FourierSeries& f = g.components[mu];
        auto integrand = [&](double t) -> cd {
            cd w(u, t);
            cd kern = conv == Convention::Conjugate ? principal_pow(w - std::conj(tau), k) : principal_pow(w - tau, k);
            return finite_or_zero(series_eval(f, w, EvalOptions{0.0}).value * kern);
        };
        double err = 0;
        cd val = integrator.integrate(integrand, v, kInf, 1e-14, &err);
        cd res = -kI * val;
        out(mu) = conv == Convention::Conjugate ? std::conj(res) : res;
    }
    return out;
}

// ---------------------------------------------------------------- moments

MomentResult period_moments(const VVForm& g, const GroupElement& gamma0, int lmax) {
    std::vector<double> ls;
    for (int l = 0; l <= lmax; ++l) ls.push_back(l);
    return period_moments(g, gamma0, ls);
}

MomentResult period_moments(const VVForm& g, const GroupElement& gamma0, const std::vector<double>& ls) {
    require_cusp_form(g);
    if (gamma0.c == 0) throw std::invalid_argument("period_moments requires c != 0");
    const GroupElement gamma = gamma0.c < 0 ? gamma0.negated() : gamma0;
    const int n = static_cast<int>(g.components.size());
    const double c = static_cast<double>(gamma.c);
    const double t0 = 1.0 / c, s0 = 1.0 / c;
    const double wt = g.weight;
    const Rational x0(-gamma.d, gamma.c), ac(gamma.a, gamma.c);
    const Mat rinv = rep_element(g.rep, gamma).matrix.adjoint();
    const cd chibar = std::conj(g.multiplier(gamma));
    const cd twist = std::polar(1.0, -kPi * wt / 2.0);

    MomentResult res;
    double tail = 0.0;
    for (int mu = 0; mu < n; ++mu) {
        const FourierSeries& f = g.components[mu];
        double band = 0.0;
        for (const auto& [idx, a] : f.coeffs)
            if (f.exponent(idx) > f.truncation - Rational(1)) band = std::max(band, std::abs(a));
        tail = std::max(tail, band * std::exp(-2.0 * kPi * f.truncation.to_double() * t0));
    }
    double lmax = 0.0;
    for (double l : ls) {
        lmax = std::max(lmax, l);
        Vec upper = Vec::Zero(n), lower_raw = Vec::Zero(n);
        const double p = wt - l - 2.0;
        for (int mu = 0; mu < n; ++mu) {
            const FourierSeries& f = g.components[mu];
            for (const auto& [idx, a] : f.coeffs) {
                Rational alpha = f.exponent(idx);
                double ta = 2.0 * kPi * alpha.to_double();
                upper(mu) += a * unit_phase(alpha * x0) * std::pow(ta, -(l + 1.0)) * std::exp(-ta * t0) *
                             scaled_incomplete_gamma(l + 1.0, ta * t0);
                lower_raw(mu) += a * unit_phase(alpha * ac) * std::pow(ta, -(p + 1.0)) * std::exp(-ta * s0) *
                                 scaled_incomplete_gamma(p + 1.0, ta * s0);
            }
        }
        Vec lower = chibar * twist * std::pow(c, wt - 2.0 * l - 2.0) * (rinv * lower_raw);
        res.moments.push_back(i_pow(l + 1.0) * (upper + lower));
    }
    double scale = 1.0;
    for (const Vec& m : res.moments) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    res.error_estimate = tail * std::pow(std::max(1.0, c), lmax + 1.0) * 10.0 / scale;
    return res;
}

Vec cusp_integral_quadrature(const VVForm& g, const GroupElement& gamma0, const std::function<cd(cd)>& kernel) {
    require_cusp_form(g);
    if (gamma0.c == 0) throw std::invalid_argument("cusp_integral_quadrature requires c != 0");
    const GroupElement gamma = gamma0.c < 0 ? gamma0.negated() : gamma0;
    const int n = static_cast<int>(g.components.size());
    const double c = static_cast<double>(gamma.c);
    const double x0 = -static_cast<double>(gamma.d) / c, ac = static_cast<double>(gamma.a) / c;
    const double t0 = 1.0 / c, s0 = 1.0 / c;
    const Mat rinv = rep_element(g.rep, gamma).matrix.adjoint();
    const cd chibar = std::conj(g.multiplier(gamma));
    const VecFn F = vv_evaluator(g, EvalOptions{0.0});
    boost::math::quadrature::exp_sinh<double> integrator;
    Vec out(n);
    for (int mu = 0; mu < n; ++mu) {
        auto upper = [&](double t) -> cd {
            cd w(x0, t);
            return finite_or_zero(series_eval(g.components[mu], w, EvalOptions{0.0}).value * kernel(w));
        };
        auto lower = [&](double s) -> cd {
            Vec moved = rinv * F(cd(ac, s));
            cd fac = chibar * principal_pow(cd(0.0, 1.0 / (c * s)), -g.weight);
            cd w(x0, 1.0 / (c * c * s));
            return finite_or_zero(fac * moved(mu) * kernel(w) / (c * c * s * s));
        };
        double err = 0;
        cd a = integrator.integrate(upper, t0, kInf, 1e-14, &err);
        cd b = integrator.integrate(lower, s0, kInf, 1e-14, &err);
        out(mu) = kI * (a + b);
    }
    return out;
}

// ---------------------------------------------------------------- cocycle

PeriodCocycle::PeriodCocycle(VVForm g, double k, Convention conv)
    : g_(std::move(g)), k_(k), conv_(conv), slash_(period_slash_type(g_, k, conv)) {
    require_cusp_form(g_);
}

std::optional<std::vector<Vec>> PeriodCocycle::polynomial(const GroupElement& gamma) const {
    if (!is_integer(k_) || k_ < 0) return std::nullopt;
    const int k = static_cast<int>(k_);
    if (gamma.c == 0) return std::vector<Vec>(k + 1, Vec::Zero(dim()));
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = cache_.find(gamma); it != cache_.end()) return it->second;
    }
    MomentResult mr = period_moments(g_, gamma, k);
    std::optional<std::vector<Vec>> poly;
    if (mr.error_estimate < 1e-12) {
        std::vector<Vec> coeffs(k + 1);
        for (int j = 0; j <= k; ++j) {
            Vec nl = mr.moments[k - j];
            if (conv_ == Convention::Conjugate) nl = nl.conjugate();
            coeffs[j] = binomial(k, k - j) * ((j % 2 == 0) ? 1.0 : -1.0) * nl;
        }
        poly = coeffs;
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(gamma, poly);
    return poly;
}

bool PeriodCocycle::uses_moments(const GroupElement& gamma) const { return polynomial(gamma).has_value(); }

Vec PeriodCocycle::value(const GroupElement& gamma, cd tau) const {
    if (auto poly = polynomial(gamma)) {
        if (gamma.c == 0) return Vec::Zero(dim());
        const cd t = tau - cd(-static_cast<double>(gamma.d) / static_cast<double>(gamma.c), 0.0);
        Vec out = Vec::Zero(dim());
        cd pw = 1.0;
        for (const Vec& coef : *poly) {
            out += pw * coef;
            pw *= t;
        }
        return out;
    }
    return via_word(gamma, tau);
}

Vec PeriodCocycle::via_integral(const GroupElement& gamma, cd tau) const {
    PElement G = eichler_element(g_, k_, conv_);
    return vv_slash_value(G.eval, gamma, slash_, tau) - G(tau);
}

Vec PeriodCocycle::via_quadrature(const GroupElement& gamma, cd tau) const {
    if (gamma.c == 0) return Vec::Zero(dim());
    const double k = k_;
    if (conv_ == Convention::Conjugate) {
        const cd tb = std::conj(tau);
        return cusp_integral_quadrature(g_, gamma, [tb, k](cd w) { return principal_pow(w - tb, k); }).conjugate();
    }
    return cusp_integral_quadrature(g_, gamma, [tau, k](cd w) { return principal_pow(w - tau, k); });
}

Vec PeriodCocycle::via_word(const GroupElement& gamma, cd tau) const {
    Word w = decompose_word(gamma);
    Vec out = Vec::Zero(dim());
    // Suffix products P_i = W_{i+1} ... W_n, accumulated from the right.
    GroupElement suffix = GroupElement::identity();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        GroupElement gen = word_product(Word{*it});
        if (gen.c != 0) {
            auto base = [&](cd t) -> Vec {
                if (polynomial(gen)) return value(gen, t);
                return via_quadrature(gen, t);
            };
            out += vv_slash_value(base, suffix, slash_, tau);
        }
        suffix = gen * suffix;
    }
    return out;
}

PElement PeriodCocycle::element(const GroupElement& gamma) const {
    const PeriodCocycle* self = this;
    return {[self, gamma](cd tau) { return self->value(gamma, tau); }, "period of " + gamma.str(), std::nullopt};
}

PElement slash_p(const PElement& p, const GroupElement& gamma, const SlashType& t) {
    return {vv_slash(p.eval, gamma, t), p.description + " | " + gamma.str(), std::nullopt};
}

double cocycle_identity_residual(const PeriodCocycle& pc, const std::vector<GroupPair>& pairs,
                                 const std::vector<cd>& samples) {
    double worst = 0.0;
    for (const auto& [g1, g2] : pairs) {
        GroupElement g12 = g1 * g2;
        auto f1 = [&](cd t) { return pc.value(g1, t); };
        for (cd tau : samples) {
            Vec lhs = pc.value(g12, tau);
            Vec rhs = vv_slash_value(f1, g2, pc.slash(), tau) + pc.value(g2, tau);
            worst = std::max(worst, mixed_residual(lhs, rhs));
        }
    }
    return worst;
}

double coboundary_residual(const CocycleFn& cocycle, const PElement& p, const SlashType& t,
                           const std::vector<GroupElement>& gammas, const std::vector<cd>& samples) {
    double worst = 0.0;
    for (const auto& g : gammas)
        for (cd tau : samples) {
            Vec cob = vv_slash_value(p.eval, g, t, tau) - p(tau);
            worst = std::max(worst, mixed_residual(cocycle(g, tau), cob));
        }
    return worst;
}

// ---------------------------------------------------------------- growth

namespace {

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    if (xs.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double den = n * sxx - sx * sx;
    return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

double round_up_half(double x) { return std::max(0.5, std::ceil(2.0 * x - 1e-6) / 2.0); }

}  // namespace

GrowthParams fit_growth(const VecFn& f, const GrowthGrid& grid, double cap) {
    struct Pt {
        cd tau;
        double mag;
    };
    std::vector<Pt> pts;
    for (int iv = 0; iv < grid.nv; ++iv) {
        double v = grid.v_min * std::pow(grid.v_max / grid.v_min, iv / static_cast<double>(grid.nv - 1));
        for (int iu = 0; iu < grid.nu; ++iu) {
            double u = -grid.u_max + 2.0 * grid.u_max * iu / static_cast<double>(grid.nu - 1);
            cd tau(u, v);
            Vec val = f(tau);
            double mag = val.size() ? val.cwiseAbs().maxCoeff() : 0.0;
            if (!std::isfinite(mag)) return GrowthParams{};
            pts.push_back({tau, mag});
        }
    }
    double maxmag = 0.0;
    for (const auto& p : pts) maxmag = std::max(maxmag, p.mag);
    if (maxmag == 0.0) return GrowthParams{1e-300, 0.5, 0.5, true};
    const double floor = maxmag * 1e-300;
    double radius = 0.0;
    for (const auto& p : pts) radius = std::max(radius, std::abs(p.tau));
    const double r_min = std::max(2.0, radius / 4.0);
    std::vector<double> xr, yr, xs, ys;
    for (const auto& p : pts) {
        double ly = std::log(std::max(p.mag, floor));
        if (std::abs(p.tau) >= r_min && p.tau.imag() >= 1.0) {
            xr.push_back(std::log(std::abs(p.tau)));
            yr.push_back(ly);
        }
        if (p.tau.imag() <= 0.5) {
            xs.push_back(-std::log(p.tau.imag()));
            ys.push_back(ly);
        }
    }
    GrowthParams gp;
    gp.rho = round_up_half(slope(xr, yr));
    gp.sigma = round_up_half(slope(xs, ys));
    double ratio = 0.0;
    for (const auto& p : pts) {
        double bound = std::pow(std::abs(p.tau), gp.rho) + std::pow(p.tau.imag(), -gp.sigma);
        ratio = std::max(ratio, p.mag / bound);
    }
    gp.K = 1.5 * ratio;
    gp.ok = gp.rho <= cap && gp.sigma <= cap && std::isfinite(gp.K);
    return gp;
}

}  // namespace ecj
