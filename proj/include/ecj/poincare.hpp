#pragma once

#include <cstdint>
#include <vector>

#include "ecj/eichler.hpp"
#include "ecj/theta.hpp"

namespace ecj {

// One element per coprime lower row (c, d) with |c|, |d| <= bound, shifted by a power of T so that
// -1/2 <= Re γ(i v0) < 1/2; sorted by (|c|, |d|, c, d).
struct CosetSet {
    std::int64_t bound = 0;
    std::vector<GroupElement> elements;
};
CosetSet cosets(std::int64_t bound, double v0 = 1.0);

struct SeriesValue {
    cd value;
    double tail_estimate = 0.0;
};

// ψ(τ; r) = Σ (cτ + d)^{-r} over the rows of cosets(bound).
SeriesValue eisenstein_psi(cd tau, int r, std::int64_t bound);
SeriesValue eisenstein_psi(cd tau, int r, const CosetSet& rows);

// Grid reaching |τ| ~ 200, used for the convergence gate.
GrowthGrid wide_growth_grid();

// A cocycle given on generators: g_T = 0 and g_S, extended through S/T words.
struct CocycleInput {
    SlashType slash;
    PElement g_S;
    int dim = 1;
    double growth_exponent = 0.0;  // fitted e; 0 means not yet fitted

    Vec value(const GroupElement& gamma, cd tau) const;
    void fit_exponent(const GrowthGrid& grid = {});
};

// Coboundary of p: g_S = (p|S) - p.
CocycleInput coboundary_input(const PElement& p, const SlashType& t, int dim);

struct VecSeriesValue {
    Vec value;
    double tail_estimate = 0.0;
};

// Σ_V g_V(τ) (cτ + d)^{-r}; refuses r <= 2e + 4.
VecSeriesValue generalized_poincare(const CocycleInput& g, int r, cd tau, const CosetSet& rows);
VecSeriesValue generalized_poincare(const CocycleInput& g, int r, cd tau, std::int64_t bound);
// The summand for a single coset representative.
Vec poincare_term(const CocycleInput& g, int r, const GroupElement& V, cd tau);

struct FConstruction {
    PElement F;
    std::vector<cd> flagged;  // sample points rejected as too near a zero of ψ
};

// F = -Φ(τ; r) / ψ(τ; r); points with |ψ| below psi_floor throw.
class ConstructedF {
public:
    ConstructedF(CocycleInput g, int r, std::int64_t bound, double psi_floor = 1e-3);
    Vec operator()(cd tau) const;
    bool near_zero_of_psi(cd tau) const;
    PElement element() const;
    const CocycleInput& cocycle() const { return g_; }

private:
    CocycleInput g_;
    int r_;
    CosetSet rows_;
    double psi_floor_;
};

// ½ Σ_{M ∈ Γ_∞\Γ} e((m + κ_j) Mτ) χ(M)^{-1} (cτ+d)^{-r} ρ(M)^{-1} e_j.
VecSeriesValue km_poincare(const SlashType& t, int m_idx, int j_comp, cd tau, const CosetSet& rows);

// The same series with the τ-independent factor of every term precomputed.
class KMPoincare {
public:
    KMPoincare(const SlashType& t, int m_idx, int j_comp, const CosetSet& rows);
    VecSeriesValue operator()(cd tau) const;

private:
    double weight_, freq_;
    std::int64_t bound_;
    std::vector<GroupElement> rows_;
    std::vector<Vec> factors_;
};
VecSeriesValue km_poincare(const SlashType& t, int m_idx, int j_comp, cd tau, std::int64_t bound);
// κ_j with χ(T) ρ(T) e_j = e(κ_j) e_j.
Rational km_kappa(const SlashType& t, int j_comp);

}  // namespace ecj
