#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ecj/eichler.hpp"
#include "ecj/jacobi_forms.hpp"
#include "ecj/theta.hpp"

namespace ecj {

// A family (γ, X) ↦ p_{(γ,X)} of functions on ℍ×ℂ with the data of its slash action.
struct JacobiCocycle {
    std::int64_t m = 1;
    double weight = 0.0;
    MultiplierSystem chi;
    std::string representation;  // "theta-lifted" or "explicit"
    std::function<cd(const JacobiGroupElement&, cd, cd)> value;
};

// Σ_μ f_μ(τ) θ_{m,μ}(τ, z).
JacobiFn lift_function(VecFn f, std::int64_t m);
// Lift of a vector-valued period cocycle; values do not depend on X.
JacobiCocycle lift_cocycle(const PeriodCocycle& vv);

// Recovers f_μ(τ) from a theta expansion by a discrete Fourier transform over z = j/2m.
Vec project(const JacobiFn& p, std::int64_t m, cd tau);
// Coefficient-level projection.
VVForm project(const JacobiSeries& p, std::int64_t m, double weight, const MultiplierSystem& chi);

struct JacobiPair {
    JacobiGroupElement g1, g2;
};
using JacobiSample = std::pair<cd, cd>;

// max |p_{g1 g2} - (p_{g1} | g2) - p_{g2}|, mixed norm.
double jacobi_cocycle_check(const JacobiCocycle& c, const std::vector<JacobiPair>& pairs,
                            const std::vector<JacobiSample>& samples);

// c q^{n} ζ^{r} with c = e(phase), all exponents exact.
struct Monomial {
    Rational phase{0};
    Rational n{0};
    Rational r{0};
    std::string str() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Elliptic slash of index m by X = (λ, μ), carried out exactly.
Monomial slash_elliptic(const Monomial& p, const LatticeElement& X, const Rational& m);

struct ObstructionVerdict {
    bool non_coboundary = false;
    Rational phase{0};  // obstruction e(phase)
    cd phase_value{1.0, 0.0};
    Monomial slashed;  // (q^n ζ^r) | (0, 1)
    std::string derivation;
};

ObstructionVerdict elliptic_obstruction(const Rational& n, const Rational& r, const Rational& m = Rational(1));

// Fits |p(τ,z)| e^{-2π m y^2 / v} < K(|τ|^ρ + v^{-σ}) on the grid.
GrowthParams growth_certify_pe(const JacobiFn& p, std::int64_t m, const GrowthGrid& grid = {});

}  // namespace ecj
