#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(ECJ_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "ecj_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("verify --bogus").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("verify --suite nonsense").code == 2);
    CHECK(run("--truncation 0 weilrep").code == 2);
}

TEST_CASE("built test form round trips through decompose") {
    Run f = run("--truncation 10 form build-test");
    REQUIRE(f.code == 0);
    auto j = nlohmann::json::parse(f.out);
    CHECK(j["weight"] == 4.5);
    CHECK(j["index"] == 1);
    auto path = scratch("form.json");
    std::ofstream(path) << f.out;
    Run d = run("decompose --form " + path.string());
    REQUIRE(d.code == 0);
    auto v = nlohmann::json::parse(d.out);
    CHECK(v["m"] == 1);
    CHECK(v["components"].size() == 2);
}

TEST_CASE("lvalues writes a CSV with a fixed header") {
    Run r = run("--truncation 20 lvalues --gamma S");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "mu,n,re,im,method,err");
    int rows = 0;
    while (std::getline(in, row))
        if (!row.empty()) ++rows;
    CHECK(rows == 6);
}

TEST_CASE("non-cuspidal input is refused with a witness") {
    Run f = run("--truncation 4 form build-test");
    REQUIRE(f.code == 0);
    auto j = nlohmann::json::parse(f.out);
    j["series"]["coeffs"].push_back({0, 3, 1.0, 0.0});
    auto path = scratch("noncusp.json");
    std::ofstream(path) << j.dump();
    Run r = run("lvalues --form " + path.string());
    CHECK(r.code == 3);
    CHECK(r.out.find("check_cuspidal witness") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and written to --out") {
    auto a = scratch("a.json"), b = scratch("b.json");
    REQUIRE(run("--seed 3 --truncation 40 --out " + a.string() + " verify --suite obstruction").code == 0);
    REQUIRE(run("--seed 3 --truncation 40 --out " + b.string() + " verify --suite obstruction").code == 0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    std::string sa = slurp(a);
    CHECK_FALSE(sa.empty());
    CHECK(sa == slurp(b));
    auto j = nlohmann::json::parse(sa);
    CHECK(j["config"]["seed"] == 3);
}

TEST_CASE("poincare and weilrep subcommands produce JSON") {
    Run p = run("--bound 50 poincare --mode psi --tau 0,1");
    REQUIRE(p.code == 0);
    CHECK_NOTHROW(nlohmann::json::parse(p.out));
    Run w = run("--index 2 weilrep");
    REQUIRE(w.code == 0);
    CHECK_NOTHROW(nlohmann::json::parse(w.out));
}
