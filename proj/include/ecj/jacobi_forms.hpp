#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ecj/modular_group.hpp"
#include "ecj/series.hpp"

namespace ecj {

using JacobiFn = std::function<cd(cd tau, cd z)>;

struct LatticeElement {
    std::int64_t lambda = 0;
    std::int64_t mu = 0;
    friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

// (gamma, X) in the Jacobi group with (g1, X1)(g2, X2) = (g1 g2, X1 g2 + X2).
struct JacobiGroupElement {
    GroupElement gamma;
    LatticeElement X;
    friend JacobiGroupElement operator*(const JacobiGroupElement& x, const JacobiGroupElement& y);
    friend bool operator==(const JacobiGroupElement&, const JacobiGroupElement&) = default;
};

// Row vector X times gamma.
LatticeElement lattice_act(const LatticeElement& X, const GroupElement& g);

struct JacobiForm {
    JacobiSeries series;
    double weight = 0.0;
    std::int64_t index = 1;
    MultiplierSystem multiplier;
    bool cuspidal = false;
};

JacobiSeries slash_elliptic(const JacobiSeries& f, const LatticeElement& X, const Rational& m);
JacobiFn slash_elliptic(JacobiFn f, const LatticeElement& X, double m);
// (cτ+d)^{-k} conj(chi(γ)) e(-c m z^2/(cτ+d)) f(γτ, z/(cτ+d)).
JacobiFn slash_modular(JacobiFn f, const GroupElement& g, double k, double m, const MultiplierSystem& chi);
JacobiFn slash_jacobi(JacobiFn f, const JacobiGroupElement& gx, double k, double m, const MultiplierSystem& chi);

// Evaluates a series, refusing points outside its certified region.
JacobiFn evaluator(const JacobiSeries& f, EvalOptions opt = {});

// The theta factor sum_n (-1)^n q^{(2n+1)^2/8} zeta^{(2n+1)/2} of index 1/2.
JacobiSeries odd_theta_series(const Rational& truncation);
// eta^7 times the square of the odd theta factor: weight 9/2, index 1, multiplier eps^13.
JacobiForm build_testform(const Rational& truncation = Rational(40));

struct CuspidalVerdict {
    bool cuspidal = true;
    std::optional<Rational> min_discriminant;
    std::optional<std::pair<Rational, Rational>> witness;  // (q exponent, zeta exponent)
};

CuspidalVerdict check_cuspidal(const JacobiSeries& f, const Rational& m);

// Max over the (λ, μ) list of coefficient differences between f and f|X.
double elliptic_invariance_residual(const JacobiSeries& f, const Rational& m,
                                    const std::vector<LatticeElement>& Xs);

nlohmann::json to_json(const JacobiForm& f);
JacobiForm jacobiform_from_json(const nlohmann::json& j);

}  // namespace ecj
