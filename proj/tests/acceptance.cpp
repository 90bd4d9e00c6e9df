// Acceptance runner: one line per criterion, non-zero exit if any fails.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ecj/suites.hpp"
#include "ecj/theta.hpp"
#include "oracles.hpp"

using namespace ecj;

namespace {

int failures = 0;

std::string worst(const SuiteReport& r) {
    double w = 0.0;
    std::string name;
    for (const auto& c : r.checks)
        if (c.tolerance > 0 && c.value / c.tolerance >= w) {
            w = c.value / c.tolerance;
            name = c.name;
        }
    std::ostringstream os;
    os << r.checks.size() << " checks";
    if (!name.empty()) os << ", tightest " << name << " at " << w << " of tolerance";
    return os.str();
}

void line(int n, const std::string& title, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << "criterion " << n << " [" << (ok ? "PASS" : "FAIL") << "] " << title << ": " << detail << '\n';
}

void report_failures(const SuiteReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass) std::cout << "    failed check: " << c.name << " value " << c.value << " tolerance " << c.tolerance << '\n';
}

void suite_line(int n, const std::string& title, const SuiteReport& r) {
    line(n, title, r.pass(), worst(r));
    report_failures(r);
}

bool oracle_coefficients_match(int truncation) {
    VVForm F = decompose(build_testform(Rational(truncation)));
    auto ref = oracle::testform_coefficients(truncation);
    for (const auto& [key, c] : ref) {
        Rational r = key.second;
        if (!r.is_integer()) return false;
        std::int64_t mu = pos_mod(r.num(), 2);
        Rational alpha = key.first - r * r / Rational(4);
        if (F.components[mu].coeff_at(alpha) != cd(static_cast<double>(c))) return false;
    }
    return F.components[1].coeff_at(Rational(7, 24)) == cd(1.0) && F.components[0].coeff_at(Rational(13, 24)) == cd(-2.0);
}

std::string run_cli(const std::string& args, int& code) {
    std::string cmd = std::string(ECJ_CLI_PATH) + " " + args;
    code = std::system(cmd.c_str());
    code = WIFEXITED(code) ? WEXITSTATUS(code) : -1;
    return cmd;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

int main() {
    SuiteConfig cfg;
    std::cout << "seed " << cfg.seed << ", truncation " << cfg.truncation << ", bound " << cfg.bound << ", profile "
              << cfg.tol_profile << '\n';

    suite_line(1, "Weil representation relations, homomorphism, unitarity (m = 1..5)", run_weil_suite(cfg));
    suite_line(2, "theta transformation laws (m = 1..3, 20 points)", run_theta_suite(cfg));

    SuiteReport dec = run_decomposition_suite(cfg);
    bool orc = oracle_coefficients_match(static_cast<int>(cfg.truncation));
    line(3, "decomposition round trip, vector transformation, leading coefficients", dec.pass() && orc,
         worst(dec) + (orc ? ", oracle coefficients agree" : ", oracle coefficients DISAGREE"));
    report_failures(dec);

    suite_line(4, "Eichler integrals, cocycle identity, g_{T^n} = 0", run_period_suite(cfg));

    SuiteReport lift = run_lift_suite(cfg);
    std::ostringstream five;
    five << worst(lift) << "; literal family Jacobi cocycle residual "
         << lift.details.value("literal_family_jacobi_cocycle_residual", -1.0) << " (diagnostic, see ledger)";
    line(5, "L-value representative vs quadrature, Jacobi cocycle condition (k = 2)", lift.pass(), five.str());
    report_failures(lift);

    suite_line(6, "psi transformation, constructed F, Knopp-Mason series (bound 300)", run_poincare_suite(cfg));
    suite_line(7, "obstruction phases (exact rationals)", run_obstruction_suite(cfg));

    auto dir = std::filesystem::temp_directory_path() / "ecj_acceptance";
    std::filesystem::create_directories(dir);
    auto a = dir / "run_a.json", b = dir / "run_b.json";
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    int ca = 0, cb = 0;
    run_cli("--seed 7 --precision 17 --truncation 60 --out " + a.string() + " verify --suite all > /dev/null 2>&1", ca);
    run_cli("--seed 7 --precision 17 --truncation 60 --out " + b.string() + " verify --suite all > /dev/null 2>&1", cb);
    std::string ra = slurp(a), rb = slurp(b);
    bool same = ca == 0 && cb == 0 && !ra.empty() && ra == rb;
    line(8, "byte-identical reports from two CLI runs", same,
         std::to_string(ra.size()) + " bytes, exit codes " + std::to_string(ca) + " and " + std::to_string(cb));

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
    return failures == 0 ? 0 : 1;
}
