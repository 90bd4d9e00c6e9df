#include "ecj/cohomology.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ecj {

JacobiFn lift_function(VecFn f, std::int64_t m) {
    return [f = std::move(f), m](cd tau, cd z) {
        Vec v = f(tau);
        if (v.size() != 2 * m) throw std::invalid_argument("lift requires 2m components");
        cd out = 0.0;
        for (std::int64_t mu = 0; mu < 2 * m; ++mu) out += v(mu) * theta_value(m, mu, tau, z);
        return out;
    };
}

JacobiCocycle lift_cocycle(const PeriodCocycle& vv) {
    const VVForm& g = vv.form();
    if (static_cast<std::int64_t>(g.components.size()) != 2 * g.m)
        throw std::invalid_argument("lift_cocycle: component count does not match 2m");
    JacobiCocycle out;
    out.m = g.m;
    out.weight = -vv.k() + 0.5;
    out.chi = vv.slash().chi.times(g.rep.chi_prime);
    out.chi.weight = out.weight;
    out.representation = "theta-lifted";
    const std::int64_t m = g.m;
    out.value = [&vv, m](const JacobiGroupElement& gx, cd tau, cd z) {
        Vec v = vv.value(gx.gamma, tau);
        cd s = 0.0;
        for (std::int64_t mu = 0; mu < 2 * m; ++mu) s += v(mu) * theta_value(m, mu, tau, z);
        return s;
    };
    return out;
}

Vec project(const JacobiFn& p, std::int64_t m, cd tau) {
    const std::int64_t n = 2 * m;
    Vec out(n);
    std::vector<cd> vals(n);
    for (std::int64_t j = 0; j < n; ++j) vals[j] = p(tau, cd(static_cast<double>(j) / n, 0.0));
    for (std::int64_t mu = 0; mu < n; ++mu) {
        cd acc = 0.0;
        for (std::int64_t j = 0; j < n; ++j) acc += vals[j] * unit_phase(Rational(-mu * j, n));
        acc /= static_cast<double>(n);
        cd th = theta_value(m, mu, tau, 0.0);
        if (std::abs(th) < 1e-300) throw std::domain_error("project: theta_{m,mu}(tau, 0) vanishes");
        out(mu) = acc / th;
    }
    return out;
}

VVForm project(const JacobiSeries& p, std::int64_t m, double weight, const MultiplierSystem& chi) {
    return decompose(p, m, weight, chi);
}

double jacobi_cocycle_check(const JacobiCocycle& c, const std::vector<JacobiPair>& pairs,
                            const std::vector<JacobiSample>& samples) {
    double worst = 0.0;
    for (const auto& [g1, g2] : pairs) {
        JacobiGroupElement g12 = g1 * g2;
        JacobiFn p1 = [&c, g1](cd tau, cd z) { return c.value(g1, tau, z); };
        JacobiFn slashed = slash_jacobi(p1, g2, c.weight, static_cast<double>(c.m), c.chi);
        for (const auto& [tau, z] : samples) {
            cd lhs = c.value(g12, tau, z);
            cd rhs = slashed(tau, z) + c.value(g2, tau, z);
            worst = std::max(worst, mixed_residual(lhs, rhs));
        }
    }
    return worst;
}

// ---------------------------------------------------------------- monomials

std::string Monomial::str() const {
    std::ostringstream os;
    os << "e(" << phase.str() << ") q^(" << n.str() << ") zeta^(" << r.str() << ")";
    return os.str();
}

Monomial slash_elliptic(const Monomial& p, const LatticeElement& X, const Rational& m) {
    // e(m(λ²τ + 2λz + λμ)) q^n ζ^r evaluated at z + λτ + μ.
    const Rational lam(X.lambda), mu(X.mu);
    Monomial out;
    out.phase = (p.phase + m * lam * mu + p.r * mu).frac();
    out.n = p.n + m * lam * lam + p.r * lam;
    out.r = p.r + Rational(2) * m * lam;
    return out;
}

ObstructionVerdict elliptic_obstruction(const Rational& n, const Rational& r, const Rational& m) {
    if (!(n > Rational(0))) throw std::invalid_argument("elliptic_obstruction requires n > 0");
    ObstructionVerdict v;
    Monomial p{Rational(0), n, r};
    v.slashed = slash_elliptic(p, LatticeElement{0, 1}, m);
    v.phase = (v.slashed.phase - p.phase).frac();
    v.phase_value = unit_phase(v.phase);
    v.non_coboundary = v.phase != Rational(0);
    std::ostringstream os;
    os << "assume p_X = (P|X) - P; p vanishes on (0,1), so P|(0,1) = P; commuting (1,0) past (0,1) forces "
       << "p_(1,0)|(0,1) = p_(1,0); but " << p.str() << " | (0,1) = " << v.slashed.str() << ", phase e("
       << v.phase.str() << ")" << (v.non_coboundary ? " != 1: not a coboundary" : " = 1: inconclusive");
    v.derivation = os.str();
    return v;
}

GrowthParams growth_certify_pe(const JacobiFn& p, std::int64_t m, const GrowthGrid& grid) {
    VecFn reduced = [&p, m](cd tau) {
        const double v = tau.imag();
        double best = 0.0;
        for (double x : {0.0, 0.25, 0.5})
            for (double yf : {0.0, 0.25, -0.5}) {
                double y = yf * v;
                double mag = std::abs(p(tau, cd(x, y))) * std::exp(-2.0 * std::numbers::pi * m * y * y / v);
                best = std::max(best, mag);
            }
        Vec out(1);
        out(0) = best;
        return out;
    };
    return fit_growth(reduced, grid);
}

}  // namespace ecj
