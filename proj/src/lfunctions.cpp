#include "ecj/lfunctions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ecj {

namespace {

constexpr double kPi = std::numbers::pi;

GroupElement positive_c(const GroupElement& g) { return g.c < 0 ? g.negated() : g; }

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

CoefficientBound fit_coefficient_bound(const FourierSeries& f) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [idx, a] : f.coeffs) {
        double alpha = f.exponent(idx).to_double();
        if (alpha >= 1.0 && std::abs(a) > 0) pts.emplace_back(std::log(alpha), std::log(std::abs(a)));
    }
    CoefficientBound b;
    if (pts.empty()) {
        for (const auto& [idx, a] : f.coeffs) b.A = std::max(b.A, std::abs(a));
        return b;
    }
    if (pts.size() >= 2) {
        double n = static_cast<double>(pts.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double den = n * sxx - sx * sx;
        if (den > 0) b.theta = std::max(0.0, (n * sxy - sx * sy) / den);
    }
    for (const auto& [idx, a] : f.coeffs) {
        double alpha = f.exponent(idx).to_double();
        b.A = std::max(b.A, std::abs(a) / std::pow(std::max(alpha, 1.0), b.theta));
    }
    return b;
}

LValue partial_L(const PartialLSpec& spec, double s, LMethod method, double tol) {
    if (spec.gamma.c == 0) throw std::invalid_argument("partial_L requires c != 0");
    if (spec.mu < 0 || spec.mu >= static_cast<std::int64_t>(spec.form.components.size()))
        throw std::out_of_range("partial_L: component index out of range");
    const GroupElement g = positive_c(spec.gamma);
    const FourierSeries& f = spec.form.components[spec.mu];
    LValue out;
    out.s = s;
    out.method = method;
    if (f.is_zero()) return out;

    if (method == LMethod::Dirichlet) {
        const Rational twist(-g.d, g.c);
        cd sum = 0.0;
        for (const auto& [idx, a] : f.coeffs) {
            Rational alpha = f.exponent(idx);
            sum += a * unit_phase(alpha * twist) * std::pow(alpha.to_double(), -s);
        }
        CoefficientBound b = fit_coefficient_bound(f);
        const double T = f.truncation.to_double();
        double tail = std::numeric_limits<double>::infinity();
        if (s > b.theta + 1.0)
            tail = b.A * static_cast<double>(f.lattice.lambda) * std::pow(T, b.theta - s + 1.0) / (s - b.theta - 1.0);
        if (!(tail <= tol * std::max(1.0, std::abs(sum)))) {
            std::ostringstream os;
            os << "dirichlet method refused at s = " << s << ": tail estimate " << tail << " exceeds tolerance "
               << tol;
            throw std::domain_error(os.str());
        }
        out.value = sum;
        out.error_estimate = tail;
        return out;
    }

    if (!(s > 0)) throw std::domain_error("integral method requires s > 0");
    MomentResult mr = period_moments(spec.form, g, std::vector<double>{s - 1.0});
    cd moment = mr.moments[0](spec.mu);
    out.value = std::pow(2.0 * kPi, s) * moment / (std::polar(1.0, kPi * s / 2.0) * std::tgamma(s));
    out.error_estimate = mr.error_estimate * std::max(1.0, std::abs(out.value));
    return out;
}

// ---------------------------------------------------------------- representative

CocycleRepresentative::CocycleRepresentative(const JacobiForm& phi, RepFamily family) : family_(family) {
    double k = phi.weight - 2.5;
    if (std::abs(k - std::round(k)) > 1e-12 || std::round(k) < 1)
        throw std::domain_error("cocycle representative requires Jacobi weight k + 5/2 with k a positive integer (k in Z_{>0}); got weight " +
                                std::to_string(phi.weight));
    k_ = static_cast<int>(std::round(k));
    form_ = decompose(phi);
    const MultiplierSystem base = family == RepFamily::Literal ? form_.multiplier.conj() : form_.multiplier;
    jacobi_chi_ = base.times(form_.rep.chi_prime);
    jacobi_chi_.weight = 0.5 - k_;
}

LValue CocycleRepresentative::lvalue(std::int64_t mu, const GroupElement& gamma, int n) const {
    auto key = std::make_tuple(mu, positive_c(gamma), n);
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    LValue v = partial_L(PartialLSpec{form_, mu, gamma}, n + 1.0);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(key, v).first->second;
}

std::vector<std::vector<cd>> CocycleRepresentative::coefficients(const GroupElement& gamma) const {
    const std::int64_t dim = static_cast<std::int64_t>(form_.components.size());
    std::vector<std::vector<cd>> out(dim, std::vector<cd>(k_ + 1, 0.0));
    if (gamma.c == 0) return out;
    const cd two_pi_i(0.0, 2.0 * kPi);
    for (std::int64_t mu = 0; mu < dim; ++mu)
        for (int n = 0; n <= k_; ++n) {
            cd L = lvalue(mu, gamma, n).value;
            double sign = ((k_ + n) % 2 == 0) ? 1.0 : -1.0;
            double comb = factorial(k_) / factorial(k_ - n);
            if (family_ == RepFamily::Literal)
                out[mu][n] = comb * sign * std::conj(L) / std::pow(two_pi_i, n + 1);
            else
                out[mu][n] = comb * sign * L / std::pow(-two_pi_i, n + 1);
        }
    return out;
}

Vec CocycleRepresentative::components(const GroupElement& gamma, cd tau) const {
    const std::int64_t dim = static_cast<std::int64_t>(form_.components.size());
    Vec out = Vec::Zero(dim);
    if (gamma.c == 0) return out;
    auto coef = coefficients(gamma);
    const cd t = tau + static_cast<double>(gamma.d) / static_cast<double>(gamma.c);
    for (std::int64_t mu = 0; mu < dim; ++mu)
        for (int n = 0; n <= k_; ++n) out(mu) += coef[mu][n] * std::pow(t, k_ - n);
    return out;
}

cd CocycleRepresentative::value(const JacobiGroupElement& gx, cd tau, cd z) const {
    Vec r = components(gx.gamma, tau);
    cd s = 0.0;
    for (std::int64_t mu = 0; mu < r.size(); ++mu) s += r(mu) * theta_value(form_.m, mu, tau, z);
    return s;
}

JacobiCocycle CocycleRepresentative::as_cocycle() const {
    JacobiCocycle c;
    c.m = form_.m;
    c.weight = 0.5 - k_;
    c.chi = jacobi_chi_;
    c.representation = "explicit";
    c.value = [this](const JacobiGroupElement& gx, cd tau, cd z) { return value(gx, tau, z); };
    return c;
}

std::string render_formula(bool statement_order) {
    if (statement_order)
        return "r_{mu,gamma}(tau) = sum_{k=0}^{n} k! (-1)^{k+n} conj(L(Phi,mu,gamma,n+1)) / ((k-n)! (2 pi i)^{n+1}) "
               "(tau + d/c)^{k-n}";
    return "r_{mu,gamma}(tau) = sum_{n=0}^{k} k! (-1)^{k+n} conj(L(Phi,mu,gamma,n+1)) / ((k-n)! (2 pi i)^{n+1}) "
           "(tau + d/c)^{k-n}";
}

RepresentativeReport verify_representative(const CocycleRepresentative& rep, const std::vector<GroupElement>& gammas,
                         const std::vector<JacobiSample>& samples) {
    PeriodCocycle pc(rep.form(), rep.k(),
                     rep.family() == RepFamily::Literal ? Convention::Conjugate : Convention::Holomorphic);
    const std::int64_t m = rep.form().m;
    RepresentativeReport report;
    for (const GroupElement& g : gammas) {
        RepresentativeRow row{g, 0.0};
        for (const auto& [tau, z] : samples) {
            cd lhs = rep.value(JacobiGroupElement{g, {}}, tau, z);
            Vec v = pc.via_quadrature(g, tau);
            cd rhs = 0.0;
            for (std::int64_t mu = 0; mu < v.size(); ++mu) rhs += v(mu) * theta_value(m, mu, tau, z);
            row.residual = std::max(row.residual, mixed_residual(lhs, rhs));
        }
        report.max_residual = std::max(report.max_residual, row.residual);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ecj
