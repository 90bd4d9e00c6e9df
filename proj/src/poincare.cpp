#include "ecj/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ecj {

namespace {

GroupElement normalized_row(std::int64_t c, std::int64_t d, double v0) {
    Egcd e = extended_gcd(d, c);  // d x + c y = 1, so a = x, b = -y
    GroupElement g{e.x, -e.y, c, d};
    double x = act_moebius(g, cd(0.0, v0)).real();
    std::int64_t n = -static_cast<std::int64_t>(std::floor(x + 0.5));
    return GroupElement::T(n) * g;
}

}  // namespace

GrowthGrid wide_growth_grid() { return GrowthGrid{0.05, 200.0, 100.0, 30, 41}; }

CosetSet cosets(std::int64_t bound, double v0) {
    if (bound < 1) throw std::invalid_argument("cosets: bound must be positive");
    CosetSet out;
    out.bound = bound;
    for (std::int64_t c = -bound; c <= bound; ++c)
        for (std::int64_t d = -bound; d <= bound; ++d)
            if (extended_gcd(c, d).g == 1) out.elements.push_back(normalized_row(c, d, v0));
    std::sort(out.elements.begin(), out.elements.end(), [](const GroupElement& x, const GroupElement& y) {
        auto key = [](const GroupElement& g) { return std::make_tuple(std::abs(g.c), std::abs(g.d), g.c, g.d); };
        return key(x) < key(y);
    });
    return out;
}

SeriesValue eisenstein_psi(cd tau, int r, const CosetSet& rows) {
    if (r <= 2 || r % 2 != 0) throw std::invalid_argument("eisenstein_psi requires an even r > 2");
    SeriesValue out;
    double shell = 0.0;
    for (const GroupElement& g : rows.elements) {
        cd term = principal_pow(cocycle_factor(g, tau), -r);
        out.value += term;
        if (std::max(std::abs(g.c), std::abs(g.d)) == rows.bound) shell += std::abs(term);
    }
    out.tail_estimate = shell * static_cast<double>(rows.bound) / (r - 2.0);
    return out;
}

SeriesValue eisenstein_psi(cd tau, int r, std::int64_t bound) { return eisenstein_psi(tau, r, cosets(bound)); }

// ---------------------------------------------------------------- generalized Poincaré series

Vec CocycleInput::value(const GroupElement& gamma, cd tau) const {
    Word w = decompose_word(gamma);
    Vec out = Vec::Zero(dim);
    GroupElement suffix = GroupElement::identity();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        GroupElement gen = word_product(Word{*it});
        if (it->gen == Gen::S) {
            // g_{S^e} = Σ_{i<e} g_S | S^i.
            GroupElement tail = suffix;
            for (std::int64_t i = 0; i < it->exp; ++i) {
                out += vv_slash_value(g_S.eval, tail, slash, tau);
                tail = GroupElement::S() * tail;
            }
        }
        suffix = gen * suffix;
    }
    return out;
}

void CocycleInput::fit_exponent(const GrowthGrid& grid) {
    GrowthParams gp = fit_growth(g_S.eval, grid);
    if (!gp.ok) throw std::domain_error("cocycle growth could not be certified");
    g_S.growth = gp;
    growth_exponent = std::max(gp.rho, gp.sigma);
}

CocycleInput coboundary_input(const PElement& p, const SlashType& t, int dim) {
    CocycleInput g;
    g.slash = t;
    g.dim = dim;
    PElement ps = slash_p(p, GroupElement::S(), t);
    VecFn pe = p.eval;
    g.g_S = PElement{[ps, pe](cd tau) { return Vec(ps(tau) - pe(tau)); }, "(p|S) - p", std::nullopt};
    return g;
}

Vec poincare_term(const CocycleInput& g, int r, const GroupElement& V, cd tau) {
    return g.value(V, tau) * principal_pow(cocycle_factor(V, tau), -r);
}

VecSeriesValue generalized_poincare(const CocycleInput& g, int r, cd tau, const CosetSet& rows) {
    if (g.growth_exponent <= 0.0) throw std::invalid_argument("generalized_poincare: fit the growth exponent first");
    if (r <= 2.0 * g.growth_exponent + 4.0) {
        std::ostringstream os;
        os << "generalized_poincare: r = " << r << " does not exceed 2e + 4 = " << 2.0 * g.growth_exponent + 4.0;
        throw std::domain_error(os.str());
    }
    VecSeriesValue out{Vec::Zero(g.dim), 0.0};
    double shell = 0.0;
    for (const GroupElement& V : rows.elements) {
        Vec term = poincare_term(g, r, V, tau);
        out.value += term;
        if (std::max(std::abs(V.c), std::abs(V.d)) == rows.bound) shell += term.cwiseAbs().maxCoeff();
    }
    out.tail_estimate = shell * static_cast<double>(rows.bound) / (r - 2.0 * g.growth_exponent - 2.0);
    return out;
}

VecSeriesValue generalized_poincare(const CocycleInput& g, int r, cd tau, std::int64_t bound) {
    return generalized_poincare(g, r, tau, cosets(bound));
}

ConstructedF::ConstructedF(CocycleInput g, int r, std::int64_t bound, double psi_floor)
    : g_(std::move(g)), r_(r), rows_(cosets(bound)), psi_floor_(psi_floor) {
    if (g_.growth_exponent <= 0.0) g_.fit_exponent(wide_growth_grid());
}

bool ConstructedF::near_zero_of_psi(cd tau) const {
    return std::abs(eisenstein_psi(tau, r_, rows_).value) < psi_floor_;
}

Vec ConstructedF::operator()(cd tau) const {
    cd psi = eisenstein_psi(tau, r_, rows_).value;
    if (std::abs(psi) < psi_floor_) {
        std::ostringstream os;
        os << "construct_F: sample point (" << tau.real() << ", " << tau.imag() << ") is too near a zero of psi";
        throw std::domain_error(os.str());
    }
    return -generalized_poincare(g_, r_, tau, rows_).value / psi;
}

PElement ConstructedF::element() const {
    return {[this](cd tau) { return (*this)(tau); }, "-Phi/psi", std::nullopt};
}

// ---------------------------------------------------------------- Knopp-Mason

Rational km_kappa(const SlashType& t, int j_comp) {
    if (j_comp < 0 || j_comp >= static_cast<int>(t.rep.T_phases.size()))
        throw std::out_of_range("km_kappa: component out of range");
    Rational ph = t.conjugate_rep ? -t.rep.T_phases[j_comp] : t.rep.T_phases[j_comp];
    return (t.chi.phase(GroupElement::T()) + ph).frac();
}

KMPoincare::KMPoincare(const SlashType& t, int m_idx, int j_comp, const CosetSet& rows)
    : weight_(t.weight), freq_(m_idx + km_kappa(t, j_comp).to_double()), bound_(rows.bound), rows_(rows.elements) {
    if (t.weight <= 2.0) throw std::invalid_argument("km_poincare requires r > 2");
    factors_.reserve(rows_.size());
    for (const GroupElement& M : rows_) factors_.push_back(0.5 * std::conj(t.chi(M)) * t.rho(M).adjoint().col(j_comp));
}

VecSeriesValue KMPoincare::operator()(cd tau) const {
    VecSeriesValue out{Vec::Zero(factors_.empty() ? 0 : factors_.front().size()), 0.0};
    double shell = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const GroupElement& M = rows_[i];
        cd scal = std::exp(cd(0.0, 2.0 * std::numbers::pi * freq_) * act_moebius(M, tau)) *
                  principal_pow(cocycle_factor(M, tau), -weight_);
        out.value += scal * factors_[i];
        if (std::max(std::abs(M.c), std::abs(M.d)) == bound_) shell += std::abs(scal) * factors_[i].cwiseAbs().maxCoeff();
    }
    out.tail_estimate = shell * static_cast<double>(bound_) / (weight_ - 2.0);
    return out;
}

VecSeriesValue km_poincare(const SlashType& t, int m_idx, int j_comp, cd tau, const CosetSet& rows) {
    return KMPoincare(t, m_idx, j_comp, rows)(tau);
}

VecSeriesValue km_poincare(const SlashType& t, int m_idx, int j_comp, cd tau, std::int64_t bound) {
    return km_poincare(t, m_idx, j_comp, tau, cosets(bound));
}

}  // namespace ecj
