#include "ecj/suites.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ecj/cohomology.hpp"
#include "ecj/eichler.hpp"
#include "ecj/jacobi_forms.hpp"
#include "ecj/lfunctions.hpp"
#include "ecj/poincare.hpp"
#include "ecj/theta.hpp"
#include "ecj/weil_rep.hpp"

namespace ecj {

namespace {

using nlohmann::json;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<cd> random_taus(std::mt19937_64& rng, int n, double vlo, double vhi) {
    std::vector<cd> out;
    for (int i = 0; i < n; ++i) out.emplace_back(uniform(rng, -0.5, 0.5), uniform(rng, vlo, vhi));
    return out;
}

std::vector<JacobiSample> random_jacobi_samples(std::mt19937_64& rng, int n) {
    std::vector<JacobiSample> out;
    for (int i = 0; i < n; ++i) {
        cd tau(uniform(rng, -0.5, 0.5), uniform(rng, 0.7, 1.5));
        cd z(uniform(rng, -0.5, 0.5), uniform(rng, -0.2, 0.2) * tau.imag());
        out.emplace_back(tau, z);
    }
    return out;
}

std::vector<GroupPair> random_pairs(std::mt19937_64& rng, int n, std::int64_t bound) {
    std::vector<GroupPair> out;
    for (int i = 0; i < n; ++i) out.push_back({random_element(rng, bound), random_element(rng, bound)});
    return out;
}

LatticeElement random_lattice(std::mt19937_64& rng, std::int64_t bound) {
    std::uniform_int_distribution<std::int64_t> d(-bound, bound);
    std::int64_t l = d(rng);
    return {l, d(rng)};
}

std::vector<JacobiPair> random_jacobi_pairs(std::mt19937_64& rng, int n, std::int64_t bound) {
    std::vector<JacobiPair> out;
    for (int i = 0; i < n; ++i) {
        JacobiGroupElement a{random_element(rng, bound), random_lattice(rng, 3)};
        JacobiGroupElement b{random_element(rng, bound), random_lattice(rng, 3)};
        out.push_back({a, b});
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

json cd_json(cd z) { return json::array({z.real(), z.imag()}); }

}  // namespace

double profile_scale(const std::string& profile) {
    if (profile == "loose") return 10.0;
    if (profile == "default") return 1.0;
    if (profile == "strict") return 0.1;
    throw std::invalid_argument("unknown tolerance profile: " + profile);
}

bool SuiteReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void SuiteReport::check(const std::string& name, double value, double base, const SuiteConfig& cfg, std::string note) {
    CheckResult c;
    c.name = name;
    c.value = value;
    c.base_tolerance = base;
    c.tolerance = base * profile_scale(cfg.tol_profile);
    c.pass = std::isfinite(value) && value < c.tolerance;
    c.note = std::move(note);
    checks.push_back(c);
}

void SuiteReport::exact(const std::string& name, bool ok, std::string note) {
    CheckResult c;
    c.name = name;
    c.value = ok ? 0.0 : 1.0;
    c.pass = ok;
    c.note = note.empty() ? "exact" : std::move(note);
    checks.push_back(c);
}

json to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j;
        j["name"] = c.name;
        j["value"] = c.value;
        j["tolerance"] = c.tolerance;
        j["tolerance_provenance"] =
            c.base_tolerance == 0.0 ? "exact comparison" : "base " + fmt(c.base_tolerance) + " scaled by profile";
        j["pass"] = c.pass;
        if (!c.note.empty()) j["note"] = c.note;
        checks.push_back(j);
    }
    return json{{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}, {"details", r.details}};
}

// ---------------------------------------------------------------- suites

SuiteReport run_weil_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"weil", {}, json::object()};
    std::mt19937_64 rng(cfg.seed);
    for (std::int64_t m = 1; m <= 5; ++m) {
        RepresentationSpec spec = build_generators(m);
        RelationReport rr = relation_check(spec);
        const std::string tag = "m=" + std::to_string(m) + " ";
        rep.check(tag + "S^2 = Z", rr.s2_eq_z, 1e-12, cfg);
        rep.check(tag + "(ST)^3 = Z", rr.st3_eq_z, 1e-12, cfg);
        rep.check(tag + "unitarity", rr.unitarity, 1e-12, cfg);
        rep.check(tag + "twisted S^4 = I", rr.twisted_s4, 1e-12, cfg);
        rep.check(tag + "twisted (ST)^3 = S^2", rr.twisted_st3, 1e-12, cfg);
        rep.exact(tag + "Z^4 = I in exact phases", rr.z4_exact);
        double hom = 0.0;
        for (const auto& [g1, g2] : random_pairs(rng, 100, 10)) {
            Mat lhs = rep_element(spec, g1 * g2).matrix;
            Mat rhs = rep_element(spec, g1).matrix * rep_element(spec, g2).matrix;
            hom = std::max(hom, max_abs(lhs - rhs));
        }
        rep.check(tag + "homomorphism over 100 random pairs", hom, 1e-10, cfg);
    }
    return rep;
}

SuiteReport run_theta_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"theta", {}, json::object()};
    std::mt19937_64 rng(cfg.seed + 1);
    for (std::int64_t m = 1; m <= 3; ++m) {
        std::vector<std::pair<cd, cd>> samples;
        for (int i = 0; i < 20; ++i) {
            cd tau(uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0));
            cd z(uniform(rng, -1.0, 1.0), uniform(rng, -0.5, 0.5));
            samples.emplace_back(tau, z);
        }
        ThetaLawReport tr = theta_transform_check(m, samples);
        rep.check("m=" + std::to_string(m) + " S law", tr.s_law, 1e-9, cfg);
        rep.check("m=" + std::to_string(m) + " T law", tr.t_law, 1e-9, cfg);
    }
    return rep;
}

SuiteReport run_decomposition_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"decomposition", {}, json::object()};
    JacobiForm phi = build_testform(Rational(cfg.truncation));
    VVForm F = decompose(phi);
    JacobiSeries back = recompose(F);
    bool same = back.coeffs.size() == phi.series.coeffs.size();
    if (same)
        for (const auto& [key, c] : phi.series.coeffs) {
            cd other = back.coeff_at(phi.series.q_exponent(key.first), phi.series.z_exponent(key.second));
            if (other != c) {
                same = false;
                break;
            }
        }
    rep.exact("recompose(decompose(Phi)) coefficient round trip", same);
    std::mt19937_64 rng(cfg.seed + 2);
    std::vector<cd> samples = random_taus(rng, 5, 0.5, 1.5);
    for (const auto& [name, g] : std::vector<std::pair<std::string, GroupElement>>{
             {"S", GroupElement::S()}, {"T", GroupElement::T()}, {"TST", word_product(parse_word("T S T"))}})
        rep.check("vv transform " + name, vv_transform_check(F, g, samples), 1e-8, cfg);
    rep.exact("C_1(7/6) = 1", F.components[1].coeff_at(Rational(7, 24)) == cd(1.0));
    rep.exact("C_0(13/6) = -2", F.components[0].coeff_at(Rational(13, 24)) == cd(-2.0));
    CuspidalVerdict cv = check_cuspidal(phi.series, Rational(phi.index));
    rep.exact("cuspidal", cv.cuspidal);
    rep.check("elliptic invariance", elliptic_invariance_residual(phi.series, Rational(1), {{1, 0}, {0, 1}, {2, -1}}),
              1e-12, cfg);
    rep.details["coefficients"] = phi.series.coeffs.size();
    if (cv.min_discriminant) rep.details["min_discriminant"] = cv.min_discriminant->str();
    return rep;
}

SuiteReport run_period_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"cocycle", {}, json::object()};
    VVForm F = decompose(build_testform(Rational(cfg.truncation)));
    std::mt19937_64 rng(cfg.seed + 3);
    for (Convention conv : {Convention::Conjugate, Convention::Holomorphic}) {
        const std::string tag = conv == Convention::Conjugate ? "conjugate " : "holomorphic ";
        double eich = 0.0;
        for (cd tau : random_taus(rng, 10, 0.3, 1.5))
            eich = std::max(eich, mixed_residual(eichler_integral(F, 2.0, conv, tau),
                                                 eichler_integral_quadrature(F, 2.0, conv, tau)));
        rep.check(tag + "Eichler integral term-wise vs quadrature (10 points)", eich, 1e-9, cfg);

        PeriodCocycle pc(F, 2.0, conv);
        std::vector<GroupPair> pairs = random_pairs(rng, cfg.trials, 3);
        std::vector<cd> samples = random_taus(rng, 3, 0.6, 1.4);
        rep.check(tag + "cocycle identity over random pairs", cocycle_identity_residual(pc, pairs, samples), 1e-8,
                  cfg);
        int moment_count = 0;
        for (const auto& [g1, g2] : pairs) moment_count += pc.uses_moments(g1 * g2);
        rep.details[tag + "products_via_moments"] = moment_count;

        bool zero = true;
        for (std::int64_t n = -3; n <= 3; ++n)
            for (const GroupElement& g : {GroupElement::T(n), GroupElement::T(n).negated()})
                for (cd tau : samples) zero = zero && (pc.value(g, tau).array() == cd(0.0)).all();
        rep.exact(tag + "g_{T^n} vanishes identically", zero);

        double direct = 0.0;
        for (const GroupElement& g : {GroupElement::S(), GroupElement{1, 0, 1, 1}, GroupElement{2, 1, 1, 1}})
            for (cd tau : samples)
                direct = std::max(direct, mixed_residual(pc.value(g, tau), pc.via_quadrature(g, tau)));
        rep.check(tag + "moment periods vs cusp-to-cusp quadrature", direct, 1e-9, cfg);
    }
    return rep;
}

SuiteReport run_lift_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"lift", {}, json::object()};
    JacobiForm phi = build_testform(Rational(cfg.truncation));
    CocycleRepresentative literal(phi, RepFamily::Literal);
    CocycleRepresentative holo(phi, RepFamily::Holomorphic);
    const VVForm& F = literal.form();
    std::mt19937_64 rng(cfg.seed + 4);

    PartialLSpec spec{F, 1, GroupElement::S()};
    LValue ld = partial_L(spec, 10.0, LMethod::Dirichlet);
    LValue li = partial_L(spec, 10.0, LMethod::Integral);
    rep.check("L(10) dirichlet vs integral, gamma = S, mu = 1", mixed_residual(ld.value / std::abs(li.value), li.value / std::abs(li.value)),
              1e-8, cfg, "relative");
    rep.details["L10_S_mu1"] = cd_json(li.value);

    PeriodCocycle conj_pc(F, 2.0, Convention::Conjugate);
    std::vector<cd> taus = random_taus(rng, 5, 0.6, 1.4);
    double lit = 0.0;
    for (const GroupElement& g : {GroupElement::S(), GroupElement{1, 0, 1, 1}, GroupElement{2, 1, 1, 1}})
        for (cd tau : taus) lit = std::max(lit, mixed_residual(literal.components(g, tau), conj_pc.via_quadrature(g, tau)));
    rep.check("L-value representative vs conjugated quadrature", lit, 1e-6, cfg);

    std::vector<JacobiSample> js = random_jacobi_samples(rng, 2);
    std::vector<JacobiPair> jpairs = random_jacobi_pairs(rng, cfg.trials, 2);
    rep.check("Jacobi cocycle condition, holomorphic representative", jacobi_cocycle_check(holo.as_cocycle(), jpairs, js),
              1e-5, cfg);
    rep.details["literal_family_jacobi_cocycle_residual"] = jacobi_cocycle_check(literal.as_cocycle(), jpairs, js);

    PeriodCocycle holo_pc(F, 2.0, Convention::Holomorphic);
    JacobiCocycle lifted = lift_cocycle(holo_pc);
    rep.check("lifted period cocycle satisfies the Jacobi cocycle condition", jacobi_cocycle_check(lifted, jpairs, js),
              1e-6, cfg);

    std::vector<GroupElement> gammas{GroupElement::S()};
    for (int i = 0; i < 5; ++i) gammas.push_back(random_element(rng, 5));
    double vm = 0.0;
    for (const CocycleRepresentative* r : {&literal, &holo}) {
        RepresentativeReport m3 = verify_representative(*r, gammas, js);
        vm = std::max(vm, m3.max_residual);
    }
    rep.check("representative equals lifted quadrature periods", vm, 1e-5, cfg);
    bool t_zero = literal.value({GroupElement::T(), {}}, js[0].first, js[0].second) == cd(0.0) &&
                  conj_pc.value(GroupElement::T(), js[0].first).isZero(0.0);
    rep.exact("gamma = T: both sides vanish", t_zero);

    bool xind = true;
    for (const auto& [tau, z] : js)
        xind = xind && literal.value({GroupElement::S(), {0, 0}}, tau, z) == literal.value({GroupElement::S(), {3, -2}}, tau, z);
    rep.exact("representative independent of X", xind);

    double tg = 0.0;
    for (const GroupElement& g : gammas)
        for (cd tau : taus) tg = std::max(tg, mixed_residual(holo.components(GroupElement::T() * g, tau), holo.components(g, tau)));
    rep.check("r_{T gamma} = r_T | gamma + r_gamma", tg, 1e-6, cfg);

    double pr = 0.0;
    for (cd tau : taus) {
        auto f = [&](cd t) { return holo_pc.value(GroupElement::S(), t); };
        pr = std::max(pr, mixed_residual(project(lift_function(f, F.m), F.m, tau), f(tau)));
    }
    rep.check("project(lift(g)) = g", pr, 1e-10, cfg);
    rep.details["statement_order"] = render_formula(true);
    rep.details["implemented_order"] = render_formula(false);
    return rep;
}

SuiteReport run_poincare_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"poincare", {}, json::object()};
    std::mt19937_64 rng(cfg.seed + 5);
    CosetSet rows = cosets(cfg.bound);
    rep.details["coset_rows"] = rows.elements.size();
    double psi = 0.0;
    for (cd tau : random_taus(rng, 3, 0.8, 1.4))
        for (const GroupElement& M : {GroupElement::S(), GroupElement::T(), GroupElement{2, 1, 1, 1}}) {
            cd lhs = eisenstein_psi(act_moebius(M, tau), 8, rows).value;
            cd rhs = principal_pow(cocycle_factor(M, tau), 8) * eisenstein_psi(tau, 8, rows).value;
            psi = std::max(psi, mixed_residual(lhs, rhs));
        }
    rep.check("psi transformation, r = 8", psi, 1e-6, cfg);
    rep.check("psi(i; 8) stable between bounds 200 and 400",
              std::abs(eisenstein_psi(cd(0, 1), 8, 200).value - eisenstein_psi(cd(0, 1), 8, 400).value), 1e-8, cfg);

    SlashType st{-2.0, MultiplierSystem::trivial(-2.0), trivial_rep(), false};
    PElement p{[](cd t) {
                   Vec v(1);
                   v(0) = std::exp(cd(0, 2 * M_PI) * t);
                   return v;
               },
               "e(tau)", std::nullopt};
    CocycleInput g = coboundary_input(p, st, 1);
    g.fit_exponent(wide_growth_grid());
    rep.details["fitted_growth_exponent"] = g.growth_exponent;
    const std::int64_t fb = std::min<std::int64_t>(40, cfg.bound);
    ConstructedF F(g, 10, fb);
    auto Fv = [&](cd t) { return F(t); };
    auto D = [&](cd t) { return Vec(F(t) - p(t)); };
    double s_res = 0, t_res = 0, inv = 0;
    int flagged = 0;
    std::vector<cd> safe;
    for (cd tau : {cd(0.3, 0.8), cd(-0.2, 1.3), cd(0.45, 0.95), cd(0.1, 1.7), cd(-0.35, 1.1), cd(0.0, 1.0)}) {
        if (F.near_zero_of_psi(tau)) {
            ++flagged;
            continue;
        }
        safe.push_back(tau);
    }
    for (cd tau : safe) {
        s_res = std::max(s_res, mixed_residual(Vec(vv_slash_value(Fv, GroupElement::S(), st, tau) - F(tau)), g.g_S(tau)));
        t_res = std::max(t_res, (vv_slash_value(Fv, GroupElement::T(), st, tau) - F(tau)).cwiseAbs().maxCoeff());
        for (const GroupElement& M : {GroupElement::S(), GroupElement::T(), GroupElement{2, 1, 1, 1}})
            inv = std::max(inv, mixed_residual(vv_slash_value(D, M, st, tau), D(tau)));
    }
    rep.details["flagged_near_psi_zero"] = flagged;
    rep.check("(F|S) - F = g_S", s_res, 1e-5, cfg);
    rep.check("(F|T) - F = 0", t_res, 1e-6, cfg);
    rep.check("F - p is invariant", inv, 1e-5, cfg);
    double rowdep = 0.0;
    for (const GroupElement& V : {GroupElement{2, 1, 1, 1}, GroupElement{1, -2, 2, -3}, GroupElement{3, 2, 4, 3}}) {
        cd tau(0.2, 1.1);
        rowdep = std::max(rowdep, mixed_residual(poincare_term(g, 10, GroupElement::T(3) * V, tau), poincare_term(g, 10, V, tau)));
    }
    rep.check("row-choice independence T^3 V", rowdep, 1e-12, cfg);
    CocycleInput zero{st, PElement::zero(1), 1, 2.0};
    rep.exact("zero cocycle gives zero", generalized_poincare(zero, 10, cd(0.1, 1.2), 10).value.isZero(0.0));

    RepresentationSpec rp = build_generators(1);
    SlashType km{8.0, MultiplierSystem{8.0, 12}, rp, false};
    double kmres = 0.0;
    for (int j = 0; j < rp.dim; ++j) {
        KMPoincare P(km, 0, j, rows);
        auto f = [&](cd t) { return P(t).value; };
        for (cd tau : {cd(0.2, 0.9), cd(-0.3, 1.4)})
            for (const GroupElement& M : {GroupElement::S(), GroupElement::T(), GroupElement{2, 1, 1, 1}})
                kmres = std::max(kmres, mixed_residual(vv_slash_value(f, M, km, tau), f(tau)));
        rep.details["km_kappa_" + std::to_string(j)] = km_kappa(km, j).str();
    }
    rep.check("Knopp-Mason series transformation", kmres, 1e-5, cfg);
    return rep;
}

SuiteReport run_obstruction_suite(const SuiteConfig&) {
    SuiteReport rep{"obstruction", {}, json::object()};
    const std::vector<std::pair<Rational, Rational>> cases{
        {Rational(1, 2), Rational(1, 2)}, {Rational(1, 3), Rational(1, 3)}, {Rational(1, 5), Rational(1, 5)},
        {Rational(1), Rational(0)},       {Rational(-2), Rational(0)}};
    json rows = json::array();
    std::vector<Rational> seen;
    for (const auto& [r, expected] : cases) {
        ObstructionVerdict v = elliptic_obstruction(Rational(1), r);
        rep.exact("r = " + r.str() + " phase e(" + expected.str() + ")",
                  v.phase == expected && v.non_coboundary == (expected != Rational(0)));
        rows.push_back({{"r", r.str()}, {"phase", v.phase.str()}, {"non_coboundary", v.non_coboundary},
                        {"derivation", v.derivation}});
        if (v.non_coboundary) seen.push_back(v.phase);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (std::size_t j = i + 1; j < seen.size(); ++j) distinct = distinct && seen[i] != seen[j];
    rep.exact("obstruction phases pairwise distinct", distinct);
    rep.details["cases"] = rows;
    return rep;
}

SuiteReport run_growth_suite(const SuiteConfig& cfg) {
    SuiteReport rep{"growth", {}, json::object()};
    VVForm F = decompose(build_testform(Rational(cfg.truncation)));
    PeriodCocycle pc(F, 2.0, Convention::Holomorphic);
    auto record = [&](const std::string& name, const GrowthParams& gp) {
        rep.exact(name + " certifies", gp.ok);
        rep.details[name] = {{"K", gp.K}, {"rho", gp.rho}, {"sigma", gp.sigma}};
    };
    record("period g_S", fit_growth([&](cd t) { return pc.value(GroupElement::S(), t); }));
    record("lifted period g_S",
           growth_certify_pe(lift_function([&](cd t) { return pc.value(GroupElement::S(), t); }, F.m), F.m));
    for (std::int64_t a = 0; a < 4; ++a)
        record("theta_{2," + std::to_string(a) + "}",
               growth_certify_pe([a](cd t, cd z) { return theta_value(2, a, t, z); }, 2));
    record("zero", growth_certify_pe([](cd, cd) { return cd(0.0); }, 1));
    record("q zeta^(1/2)", growth_certify_pe([](cd t, cd z) { return std::exp(cd(0, 2 * M_PI) * (t + 0.5 * z)); }, 1));
    return rep;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"weil", "theta", "decomposition", "cocycle",
                                                "lift", "poincare", "obstruction",      "growth"};
    return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "all") {
        std::vector<SuiteReport> out;
        for (const auto& n : suite_names()) out.push_back(run_suite(n, cfg).front());
        return out;
    }
    if (name == "weil") return {run_weil_suite(cfg)};
    if (name == "theta") return {run_theta_suite(cfg)};
    if (name == "decomposition") return {run_decomposition_suite(cfg)};
    if (name == "cocycle") return {run_period_suite(cfg)};
    if (name == "lift") return {run_lift_suite(cfg)};
    if (name == "poincare") return {run_poincare_suite(cfg)};
    if (name == "obstruction") return {run_obstruction_suite(cfg)};
    if (name == "growth") return {run_growth_suite(cfg)};
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace ecj
