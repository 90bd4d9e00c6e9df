#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ecj/jacobi_forms.hpp"
#include "ecj/weil_rep.hpp"

namespace ecj {

// theta_{m,mu}(τ, z) = sum over r ≡ mu (mod 2m) of q^{r^2/4m} zeta^r.
JacobiSeries theta_series(std::int64_t m, std::int64_t mu, const Rational& truncation);
// Direct lattice sum, summed outward from the dominant term until terms are negligible.
cd theta_value(std::int64_t m, std::int64_t mu, cd tau, cd z);
// theta_value times e^{-2π m y^2 / v}, computed without overflow.
cd theta_value_normalized(std::int64_t m, std::int64_t mu, cd tau, cd z);

struct ThetaLawReport {
    double s_law = 0;
    double t_law = 0;
};

ThetaLawReport theta_transform_check(std::int64_t m, const std::vector<std::pair<cd, cd>>& samples);

struct VVForm {
    std::int64_t m = 1;
    double weight = 0.0;
    MultiplierSystem multiplier;
    RepresentationSpec rep;
    std::vector<FourierSeries> components;  // indexed by mu = 2ma
};

using VecFn = std::function<Vec(cd)>;

// Weight, multiplier and type of a vector-valued slash action.
struct SlashType {
    double weight = 0.0;
    MultiplierSystem chi;
    RepresentationSpec rep;
    bool conjugate_rep = false;

    Mat rho(const GroupElement& g) const;
};

VVForm decompose(const JacobiSeries& f, std::int64_t m, double jacobi_weight, const MultiplierSystem& chi);
VVForm decompose(const JacobiForm& form);
JacobiSeries recompose(const VVForm& F);

VecFn vv_evaluator(const VVForm& F, EvalOptions opt = {});
SlashType slash_type(const VVForm& F);
// chi(γ)^{-1} (cτ+d)^{-w} ρ(γ)^{-1} F(γτ) at a single point.
Vec vv_slash_value(const VecFn& F, const GroupElement& g, const SlashType& t, cd tau);
VecFn vv_slash(VecFn F, const GroupElement& g, const SlashType& t);
double vv_transform_check(const VVForm& F, const GroupElement& g, const std::vector<cd>& samples);

// Mixed absolute/relative distance max_i |x_i - y_i| / max(1, |x_i|).
double mixed_residual(const Vec& x, const Vec& y);
double mixed_residual(cd x, cd y);

nlohmann::json to_json(const VVForm& F);
VVForm vvform_from_json(const nlohmann::json& j);

}  // namespace ecj
