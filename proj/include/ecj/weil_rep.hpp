#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "ecj/modular_group.hpp"

namespace ecj {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class Parity { Even, Odd };

// Index set a = i/(2m), i = 0..2m-1. The bare generators are the theta-side
// matrices; gen_T and gen_S already carry the chi_prime twist.
struct RepresentationSpec {
    std::int64_t m = 1;
    Parity parity = Parity::Odd;
    int dim = 2;
    MultiplierSystem chi_prime{0.5, 1};
    Mat bare_T, bare_S;
    Mat gen_T, gen_S;
    std::vector<Rational> T_phases;  // gen_T = diag e(T_phases[i])

    Rational characteristic(int i) const { return Rational(i, 2 * m); }
};

// The one-dimensional trivial representation.
RepresentationSpec trivial_rep();

struct RepElement {
    Mat matrix;
    Word source_word;
};

RepresentationSpec build_generators(std::int64_t m, Parity parity = Parity::Odd,
                                    MultiplierSystem chi_prime = {0.5, 1});
Mat rep_word(const RepresentationSpec& spec, const Word& w);
RepElement rep_element(const RepresentationSpec& spec, const GroupElement& g);
// Bare theta-side matrix of Z = S^2, i.e. e_a -> i e_{-a} for odd parity.
Mat bare_Z(const RepresentationSpec& spec);

struct RelationReport {
    double s2_eq_z = 0;        // |bare(S)^2 - bare(Z)|
    double st3_eq_z = 0;       // |(bare(S) bare(T))^3 - bare(Z)|
    double z2_eq_minus1 = 0;   // |bare(Z)^2 + I|
    double z4_eq_identity = 0; // |bare(Z)^4 - I|
    double twisted_s4 = 0;     // |gen(S)^4 - I|
    double twisted_st3 = 0;    // |(gen(S) gen(T))^3 - gen(S)^2|
    double unitarity = 0;      // max over generators |U U* - I|
    bool z4_exact = false;     // i^{4j} = 1 in exact phase arithmetic
    double max() const;
};

RelationReport relation_check(const RepresentationSpec& spec);

// chi'' = chi for even parity, chi * conj(chi') for odd parity.
MultiplierSystem chi_double_prime(const MultiplierSystem& chi, Parity parity, const MultiplierSystem& chi_prime);

// Max entry modulus of a matrix; used for all residual norms.
double max_abs(const Mat& m);
nlohmann::json matrix_json(const Mat& m);

}  // namespace ecj
