#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "ecj/cohomology.hpp"
#include "ecj/eichler.hpp"
#include "ecj/jacobi_forms.hpp"
#include "ecj/theta.hpp"

namespace ecj {

// Partial L-function of the component h_μ of a theta decomposition, twisted by -d/c.
struct PartialLSpec {
    VVForm form;
    std::int64_t mu = 0;
    GroupElement gamma;
};

enum class LMethod { Dirichlet, Integral };

struct LValue {
    double s = 0.0;
    cd value;
    LMethod method = LMethod::Integral;
    double error_estimate = 0.0;
};

// |a_α| <= A α^θ fitted on the stored coefficients with α >= 1.
struct CoefficientBound {
    double A = 0.0, theta = 0.0;
};
CoefficientBound fit_coefficient_bound(const FourierSeries& f);

// The Dirichlet method throws std::domain_error when its tail estimate exceeds tol.
LValue partial_L(const PartialLSpec& spec, double s, LMethod method = LMethod::Integral, double tol = 1e-8);

// Literal: conjugated L-values against (2πi)^{n+1}. Holomorphic: unconjugated against (-2πi)^{n+1}.
enum class RepFamily { Literal, Holomorphic };

class CocycleRepresentative {
public:
    // Requires Jacobi weight k + 5/2 with k a positive integer.
    CocycleRepresentative(const JacobiForm& phi, RepFamily family);

    int k() const { return k_; }
    RepFamily family() const { return family_; }
    const VVForm& form() const { return form_; }
    // coefficient[μ][n] of (τ + d/c)^{k-n}.
    std::vector<std::vector<cd>> coefficients(const GroupElement& gamma) const;
    // r_{μ,γ}(τ); zero when c = 0.
    Vec components(const GroupElement& gamma, cd tau) const;
    // Σ_μ r_{μ,γ}(τ) θ_μ(τ, z); X does not enter.
    cd value(const JacobiGroupElement& gx, cd tau, cd z) const;
    JacobiCocycle as_cocycle() const;
    LValue lvalue(std::int64_t mu, const GroupElement& gamma, int n) const;

private:
    VVForm form_;
    int k_;
    RepFamily family_;
    MultiplierSystem jacobi_chi_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<std::int64_t, GroupElement, int>, LValue> cache_;
};

// Text of the representative formula; statement_order swaps the roles of the summation indices.
std::string render_formula(bool statement_order);

struct RepresentativeRow {
    GroupElement gamma;
    double residual = 0.0;
};
struct RepresentativeReport {
    std::vector<RepresentativeRow> rows;
    double max_residual = 0.0;
};

// Compares the representative with the theta lift of the period cocycle of decompose(Φ), whose
// values are computed by cusp-to-cusp quadrature.
RepresentativeReport verify_representative(const CocycleRepresentative& rep, const std::vector<GroupElement>& gammas,
                         const std::vector<JacobiSample>& samples);

}  // namespace ecj
