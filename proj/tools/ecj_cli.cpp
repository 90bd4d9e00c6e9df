#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecj/cohomology.hpp"
#include "ecj/eichler.hpp"
#include "ecj/jacobi_forms.hpp"
#include "ecj/lfunctions.hpp"
#include "ecj/poincare.hpp"
#include "ecj/suites.hpp"
#include "ecj/theta.hpp"
#include "ecj/weil_rep.hpp"

using namespace ecj;
using nlohmann::json;

namespace {

constexpr int kReportVersion = 1;

struct Globals {
    std::int64_t index = 1;
    double weight = 4.5;
    std::int64_t truncation = 60;
    std::int64_t bound = 300;
    int precision = 17;
    std::uint64_t seed = 7;
    std::string tol_profile = "default";
    std::string out;
};

struct Refusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + g.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json config_json(const Globals& g) {
    return {{"report_version", kReportVersion}, {"index", g.index},       {"weight", g.weight},
            {"truncation", g.truncation},       {"bound", g.bound},       {"precision", g.precision},
            {"seed", g.seed},                   {"tol_profile", g.tol_profile}};
}

JacobiForm load_form(const std::string& path, const Globals& g) {
    if (path.empty()) return build_testform(Rational(g.truncation));
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read form file " + path);
    return jacobiform_from_json(json::parse(f));
}

cd parse_point(const std::string& s) {
    auto pos = s.find(',');
    if (pos == std::string::npos) throw CLI::ValidationError("point", "expected x,y but got '" + s + "'");
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

std::vector<cd> parse_points(const std::vector<std::string>& v, std::vector<cd> fallback) {
    if (v.empty()) return fallback;
    std::vector<cd> out;
    for (const auto& s : v) out.push_back(parse_point(s));
    return out;
}

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

json vjson(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
    return a;
}

void require_cuspidal(const JacobiForm& phi) {
    CuspidalVerdict v = check_cuspidal(phi.series, Rational(phi.index));
    if (v.cuspidal) return;
    std::ostringstream os;
    os << "refused: input is not a cusp form; check_cuspidal witness q^(" << v.witness->first.str() << ") zeta^("
       << v.witness->second.str() << ") with discriminant " << v.min_discriminant->str();
    throw Refusal(os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eichler cohomology for Jacobi forms: forms, periods, L-values and verification suites"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--index", g.index, "Jacobi index m")->check(CLI::Range(1, 5));
    app.add_option("--weight", g.weight, "Jacobi weight");
    app.add_option("--truncation", g.truncation, "q-expansion truncation order")->check(CLI::Range(1, 400));
    app.add_option("--bound", g.bound, "coset bound")->check(CLI::Range(1, 2000));
    app.add_option("--precision", g.precision, "significant digits in CSV output")->check(CLI::Range(1, 17));
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--tol-profile", g.tol_profile, "tolerance profile")
        ->check(CLI::IsMember({"loose", "default", "strict"}));
    app.add_option("--out", g.out, "output file (stdout when absent)");

    std::string form_kind, form_path, gamma_text = "0,-1,1,0", convention = "conjugate", mode = "psi", suite = "all";
    std::vector<std::string> taus;
    int r_exp = 0, m_idx = 0, j_comp = 0, trials = 20;

    auto* form = app.add_subcommand("form", "build a Jacobi form");
    form->add_option("kind", form_kind, "form to build")->required()->check(CLI::IsMember({"build-test"}));

    auto* dec = app.add_subcommand("decompose", "theta decomposition of a Jacobi form");
    dec->add_option("--form", form_path, "form JSON (default: the built-in test form)");

    auto* per = app.add_subcommand("periods", "period polynomial of the theta components");
    per->add_option("--form", form_path);
    per->add_option("--gamma", gamma_text, "a,b,c,d or an S/T word");
    per->add_option("--convention", convention)->check(CLI::IsMember({"conjugate", "holomorphic"}));
    per->add_option("--tau", taus, "sample points x,y");

    auto* lv = app.add_subcommand("lvalues", "critical values of the partial L-functions");
    lv->add_option("--form", form_path);
    lv->add_option("--gamma", gamma_text);

    auto* poi = app.add_subcommand("poincare", "Eisenstein and Poincare series");
    poi->add_option("--mode", mode)->check(CLI::IsMember({"psi", "generalized", "km"}));
    poi->add_option("--tau", taus);
    poi->add_option("--r", r_exp, "weight r (default 8, or 10 for generalized)");
    poi->add_option("--m-idx", m_idx, "Knopp-Mason frequency index");
    poi->add_option("--j", j_comp, "Knopp-Mason component");

    auto* wr = app.add_subcommand("weilrep", "generator matrices and relation residuals");

    auto* ver = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> allowed = suite_names();
    allowed.push_back("all");
    ver->add_option("--suite", suite)->check(CLI::IsMember(allowed));
    ver->add_option("--trials", trials)->check(CLI::Range(1, 1000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*form) {
            emit(g, dump(to_json(build_testform(Rational(g.truncation)))));
        } else if (*dec) {
            JacobiForm phi = load_form(form_path, g);
            emit(g, dump(to_json(decompose(phi))));
        } else if (*per) {
            JacobiForm phi = load_form(form_path, g);
            require_cuspidal(phi);
            VVForm F = decompose(phi);
            GroupElement gamma = GroupElement::parse(gamma_text);
            double k = F.weight - 2.0;
            PeriodCocycle pc(F, k, convention == "conjugate" ? Convention::Conjugate : Convention::Holomorphic);
            json j{{"config", config_json(g)}, {"gamma", gamma.str()}, {"word", word_str(decompose_word(gamma))},
                   {"k", k}, {"convention", convention}};
            if (auto poly = pc.polynomial(gamma)) {
                json coeffs = json::array();
                for (const Vec& c : *poly) coeffs.push_back(vjson(c));
                j["method"] = gamma.c == 0 ? "parabolic" : "moments";
                j["coefficients_in_tau_plus_d_over_c"] = coeffs;
            } else {
                j["method"] = "word expansion";
            }
            json vals = json::array();
            for (cd tau : parse_points(taus, {cd(0.1, 1.0), cd(-0.3, 0.8)})) {
                json row{{"tau", cjson(tau)}, {"value", vjson(pc.value(gamma, tau))}};
                if (gamma.c != 0) row["quadrature"] = vjson(pc.via_quadrature(gamma, tau));
                vals.push_back(row);
            }
            j["values"] = vals;
            emit(g, dump(j));
        } else if (*lv) {
            JacobiForm phi = load_form(form_path, g);
            require_cuspidal(phi);
            GroupElement gamma = GroupElement::parse(gamma_text);
            if (gamma.c == 0) throw Refusal("refused: partial L-functions need c != 0");
            CocycleRepresentative rep(phi, RepFamily::Literal);
            std::ostringstream os;
            os << "mu,n,re,im,method,err\n";
            char buf[256];
            for (std::int64_t mu = 0; mu < static_cast<std::int64_t>(rep.form().components.size()); ++mu)
                for (int n = 0; n <= rep.k(); ++n) {
                    LValue v = rep.lvalue(mu, gamma, n);
                    std::snprintf(buf, sizeof buf, "%lld,%d,%.*g,%.*g,integral,%.3g\n", static_cast<long long>(mu), n,
                                  g.precision, v.value.real(), g.precision, v.value.imag(), v.error_estimate);
                    os << buf;
                }
            emit(g, os.str());
        } else if (*poi) {
            std::vector<cd> pts = parse_points(taus, {cd(0.1, 1.2)});
            json j{{"config", config_json(g)}, {"mode", mode}};
            json rows = json::array();
            if (mode == "psi") {
                int r = r_exp ? r_exp : 8;
                CosetSet cs = cosets(g.bound);
                for (cd tau : pts) {
                    SeriesValue v = eisenstein_psi(tau, r, cs);
                    rows.push_back({{"tau", cjson(tau)}, {"value", cjson(v.value)}, {"tail", v.tail_estimate}});
                }
                j["r"] = r;
            } else if (mode == "generalized") {
                int r = r_exp ? r_exp : 10;
                SlashType st{-2.0, MultiplierSystem::trivial(-2.0), trivial_rep(), false};
                PElement p{[](cd t) {
                               Vec v(1);
                               v(0) = std::exp(cd(0, 2 * M_PI) * t);
                               return v;
                           },
                           "e(tau)", std::nullopt};
                CocycleInput ci = coboundary_input(p, st, 1);
                ci.fit_exponent(wide_growth_grid());
                ConstructedF F(ci, r, g.bound);
                for (cd tau : pts) {
                    VecSeriesValue v = generalized_poincare(ci, r, tau, g.bound);
                    json row{{"tau", cjson(tau)}, {"phi", vjson(v.value)}, {"tail", v.tail_estimate}};
                    if (F.near_zero_of_psi(tau))
                        row["flag"] = "near a zero of psi";
                    else
                        row["F"] = vjson(F(tau));
                    rows.push_back(row);
                }
                j["r"] = r;
                j["cocycle"] = "coboundary of e(tau), weight -2";
                j["growth_exponent"] = ci.growth_exponent;
            } else {
                int r = r_exp ? r_exp : 8;
                RepresentationSpec rp = build_generators(g.index);
                SlashType km{static_cast<double>(r), MultiplierSystem{static_cast<double>(r), 12}, rp, false};
                KMPoincare P(km, m_idx, j_comp, cosets(g.bound));
                for (cd tau : pts) {
                    VecSeriesValue v = P(tau);
                    rows.push_back({{"tau", cjson(tau)}, {"value", vjson(v.value)}, {"tail", v.tail_estimate}});
                }
                j["r"] = r;
                j["kappa"] = km_kappa(km, j_comp).str();
            }
            j["values"] = rows;
            emit(g, dump(j));
        } else if (*wr) {
            RepresentationSpec spec = build_generators(g.index);
            RelationReport rr = relation_check(spec);
            json j{{"config", config_json(g)},
                   {"dim", spec.dim},
                   {"S", matrix_json(spec.gen_S)},
                   {"T", matrix_json(spec.gen_T)},
                   {"relations",
                    {{"S2_eq_Z", rr.s2_eq_z},
                     {"ST3_eq_Z", rr.st3_eq_z},
                     {"Z2_eq_minus_I", rr.z2_eq_minus1},
                     {"Z4_exact", rr.z4_exact},
                     {"twisted_S4", rr.twisted_s4},
                     {"twisted_ST3", rr.twisted_st3},
                     {"unitarity", rr.unitarity}}}};
            emit(g, dump(j));
        } else if (*ver) {
            SuiteConfig cfg{g.seed, g.truncation, g.bound, g.tol_profile, trials};
            std::vector<SuiteReport> reports = run_suite(suite, cfg);
            json arr = json::array();
            bool ok = true;
            for (const auto& r : reports) {
                arr.push_back(to_json(r));
                ok = ok && r.pass();
                std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.suite << "\n";
            }
            emit(g, dump({{"config", config_json(g)}, {"suites", arr}, {"pass", ok}}));
            return ok ? 0 : 1;
        }
    } catch (const Refusal& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
