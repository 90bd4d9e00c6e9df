#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ecj/theta.hpp"

namespace ecj {

// Γ(s, x) for s > 0, x > 0.
double incomplete_gamma_upper(double s, double x);
// e^x Γ(s, x) for any real s and x > 0.
double scaled_incomplete_gamma(double s, double x);

struct GrowthParams {
    double K = 0, rho = 0, sigma = 0;
    bool ok = false;
};

struct PElement {
    VecFn eval;
    std::string description;
    std::optional<GrowthParams> growth;

    Vec operator()(cd tau) const { return eval(tau); }
    static PElement zero(int dim);
};

// Integrals against the kernel (w - conj τ)^k, conjugated afterwards, or against (w - τ)^k.
enum class Convention { Conjugate, Holomorphic };

// The slash action under which the periods of g form a cocycle: weight -k, with the multiplier
// and type of g conjugated in the conjugate convention.
SlashType period_slash_type(const VVForm& g, double k, Convention conv);

// Term-wise Eichler integral of a cusp form g.
Vec eichler_integral(const VVForm& g, double k, Convention conv, cd tau);
PElement eichler_element(const VVForm& g, double k, Convention conv);
// Adaptive quadrature along the vertical ray above τ.
Vec eichler_integral_quadrature(const VVForm& g, double k, Convention conv, cd tau);

// N_l = ∫_0^{i∞} g(x0 + w) w^l dw with x0 = -d/c, for l = 0..lmax.
struct MomentResult {
    std::vector<Vec> moments;
    double error_estimate = 0.0;
};
MomentResult period_moments(const VVForm& g, const GroupElement& gamma, int lmax);
// The same for arbitrary real l > -1.
MomentResult period_moments(const VVForm& g, const GroupElement& gamma, const std::vector<double>& ls);

// ∫_{x0}^{i∞} g(w) kernel(w) dw along x0 + it, with the part near the cusp moved by γ.
Vec cusp_integral_quadrature(const VVForm& g, const GroupElement& gamma, const std::function<cd(cd)>& kernel);

// Period cocycle γ ↦ (G|γ) - G of the Eichler integral of g.
class PeriodCocycle {
public:
    PeriodCocycle(VVForm g, double k, Convention conv);

    const VVForm& form() const { return g_; }
    double k() const { return k_; }
    Convention convention() const { return conv_; }
    const SlashType& slash() const { return slash_; }
    int dim() const { return static_cast<int>(g_.components.size()); }

    // Closed form through moments when integral k and the truncation tail is negligible,
    // otherwise the word expansion from g_S (and g_T = 0).
    Vec value(const GroupElement& gamma, cd tau) const;
    // Polynomial coefficients in (τ - x0)^j, j = 0..k, or nullopt when moments are not used.
    std::optional<std::vector<Vec>> polynomial(const GroupElement& gamma) const;
    // (G|γ)(τ) - G(τ) evaluated from the series.
    Vec via_integral(const GroupElement& gamma, cd tau) const;
    // Cusp-to-cusp quadrature.
    Vec via_quadrature(const GroupElement& gamma, cd tau) const;
    Vec via_word(const GroupElement& gamma, cd tau) const;
    PElement element(const GroupElement& gamma) const;
    bool uses_moments(const GroupElement& gamma) const;

private:
    VVForm g_;
    double k_;
    Convention conv_;
    SlashType slash_;
    mutable std::mutex mu_;
    mutable std::map<GroupElement, std::optional<std::vector<Vec>>> cache_;
};

PElement slash_p(const PElement& p, const GroupElement& gamma, const SlashType& t);

// max over pairs and samples of |g_{γ1γ2} - (g_{γ1}|γ2) - g_{γ2}| in mixed norm.
double cocycle_identity_residual(const PeriodCocycle& pc, const std::vector<GroupPair>& pairs,
                                 const std::vector<cd>& samples);

using CocycleFn = std::function<Vec(const GroupElement&, cd)>;
// max over γ and samples of |g_γ - ((p|γ) - p)|.
double coboundary_residual(const CocycleFn& cocycle, const PElement& p, const SlashType& t,
                           const std::vector<GroupElement>& gammas, const std::vector<cd>& samples);

struct GrowthGrid {
    double v_min = 0.05, v_max = 10.0, u_max = 5.0;
    int nv = 24, nu = 21;
};
// Fits |f_j(τ)| < K(|τ|^ρ + v^{-σ}) on the grid; ρ and σ are rounded up to multiples of 1/2.
// ρ is read off the outer part of the grid, |τ| >= max(2, R/4) with R the largest |τ|.
GrowthParams fit_growth(const VecFn& f, const GrowthGrid& grid = {}, double cap = 50.0);

}  // namespace ecj
