#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ecj {

struct SuiteConfig {
    std::uint64_t seed = 7;
    std::int64_t truncation = 60;
    std::int64_t bound = 300;
    std::string tol_profile = "default";  // loose, default, strict
    int trials = 20;
};

// Multiplier applied to every base tolerance.
double profile_scale(const std::string& profile);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    double base_tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    nlohmann::json details = nlohmann::json::object();

    bool pass() const;
    // Residual check: passes when value < base * profile scale.
    void check(const std::string& name, double value, double base, const SuiteConfig& cfg, std::string note = {});
    // Exact check with no tolerance.
    void exact(const std::string& name, bool ok, std::string note = {});
};

nlohmann::json to_json(const SuiteReport& r);

SuiteReport run_weil_suite(const SuiteConfig& cfg);
SuiteReport run_theta_suite(const SuiteConfig& cfg);
SuiteReport run_decomposition_suite(const SuiteConfig& cfg);
SuiteReport run_period_suite(const SuiteConfig& cfg);
SuiteReport run_lift_suite(const SuiteConfig& cfg);
SuiteReport run_poincare_suite(const SuiteConfig& cfg);
SuiteReport run_obstruction_suite(const SuiteConfig& cfg);
SuiteReport run_growth_suite(const SuiteConfig& cfg);

// Names accepted by run_suite; "all" runs every suite in this order.
const std::vector<std::string>& suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ecj
