#include "ecj/weil_rep.hpp"

#include <cmath>
#include <stdexcept>

namespace ecj {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

nlohmann::json matrix_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

RepresentationSpec build_generators(std::int64_t m, Parity parity, MultiplierSystem chi_prime) {
    if (m < 1) throw std::invalid_argument("index m must be positive");
    if (parity == Parity::Even)
        throw std::invalid_argument("even lattice rank is not implemented; only j = 1 is supported");
    RepresentationSpec spec;
    spec.m = m;
    spec.parity = parity;
    spec.dim = static_cast<int>(2 * m);
    spec.chi_prime = chi_prime;
    const int n = spec.dim;
    spec.bare_T = Mat::Zero(n, n);
    spec.bare_S = Mat::Zero(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const cd sqrt_i = unit_phase(Rational(1, 8));
    for (int i = 0; i < n; ++i) {
        Rational a = spec.characteristic(i);
        spec.bare_T(i, i) = unit_phase(-Rational(m) * a * a);
        for (int j = 0; j < n; ++j) {
            Rational b = spec.characteristic(j);
            spec.bare_S(j, i) = sqrt_i * scale * unit_phase(Rational(2 * m) * a * b);
        }
    }
    const GroupElement T = GroupElement::T(), S = GroupElement::S();
    Rational tT = chi_prime.phase(T);
    spec.gen_T = chi_prime(T) * spec.bare_T;
    spec.gen_S = chi_prime(S) * spec.bare_S;
    for (int i = 0; i < n; ++i) {
        Rational a = spec.characteristic(i);
        spec.T_phases.push_back((tT - Rational(m) * a * a).frac());
    }
    return spec;
}

RepresentationSpec trivial_rep() {
    RepresentationSpec r;
    r.m = 0;
    r.dim = 1;
    r.chi_prime = MultiplierSystem::trivial();
    r.bare_T = r.bare_S = r.gen_T = r.gen_S = Mat::Identity(1, 1);
    r.T_phases = {Rational(0)};
    return r;
}

Mat rep_word(const RepresentationSpec& spec, const Word& w) {
    Mat out = Mat::Identity(spec.dim, spec.dim);
    for (const Syllable& s : w) {
        if (s.gen == Gen::T) {
            Vec diag(spec.dim);
            for (int i = 0; i < spec.dim; ++i) diag(i) = unit_phase(Rational(s.exp) * spec.T_phases[i]);
            out = out * diag.asDiagonal();
        } else {
            for (std::int64_t e = 0; e < pos_mod(s.exp, 4); ++e) out = out * spec.gen_S;
        }
    }
    return out;
}

RepElement rep_element(const RepresentationSpec& spec, const GroupElement& g) {
    Word w = decompose_word(g);
    if (!(word_product(w) == g)) throw std::logic_error("word decomposition failed for " + g.str());
    return {rep_word(spec, w), w};
}

Mat bare_Z(const RepresentationSpec& spec) {
    Mat z = Mat::Zero(spec.dim, spec.dim);
    for (int i = 0; i < spec.dim; ++i) z((spec.dim - i) % spec.dim, i) = cd(0.0, 1.0);
    return z;
}

double RelationReport::max() const {
    return std::max({s2_eq_z, st3_eq_z, z2_eq_minus1, z4_eq_identity, twisted_s4, twisted_st3, unitarity});
}

RelationReport relation_check(const RepresentationSpec& spec) {
    RelationReport r;
    const Mat I = Mat::Identity(spec.dim, spec.dim);
    const Mat Z = bare_Z(spec);
    Mat st = spec.bare_S * spec.bare_T;
    r.s2_eq_z = max_abs(spec.bare_S * spec.bare_S - Z);
    r.st3_eq_z = max_abs(st * st * st - Z);
    r.z2_eq_minus1 = max_abs(Z * Z + I);
    r.z4_eq_identity = max_abs(Z * Z * Z * Z - I);
    // The entries of Z are exact units i, so its fourth power is exact.
    r.z4_exact = r.z4_eq_identity == 0.0;
    Mat gst = spec.gen_S * spec.gen_T;
    Mat gs2 = spec.gen_S * spec.gen_S;
    r.twisted_s4 = max_abs(gs2 * gs2 - I);
    r.twisted_st3 = max_abs(gst * gst * gst - gs2);
    for (const Mat* g : {&spec.bare_S, &spec.bare_T, &spec.gen_S, &spec.gen_T})
        r.unitarity = std::max(r.unitarity, max_abs(*g * g->adjoint() - I));
    return r;
}

MultiplierSystem chi_double_prime(const MultiplierSystem& chi, Parity parity, const MultiplierSystem& chi_prime) {
    if (parity == Parity::Even) return chi;
    MultiplierSystem c = chi.times(chi_prime.conj());
    c.weight = chi.weight - chi_prime.weight;
    return c;
}

}  // namespace ecj
