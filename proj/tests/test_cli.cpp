#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "../tools/commands.hpp"
#include "gsmooth/field_io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = gsmooth::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "gsmooth_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("dist writes the Wigner function") {
    const fs::path path = scratch("fock1.csv");
    const Result r = run({"dist", "--state", "fock:1", "--which", "wigner", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("label=wigner") != std::string::npos);
    std::ifstream in(path);
    const gsmooth::PhaseSpaceField f = gsmooth::read_field_csv(in);
    CHECK(f.values()(160, 160) == doctest::Approx(-2 / M_PI).epsilon(1e-12));
}

TEST_CASE("dist with detector widths and JSON output") {
    const fs::path path = scratch("g.json");
    const Result r = run({"dist", "--state", "coherent:1.5", "--eta1", "0.8", "--eta2", "0.6", "--format", "json",
                          "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("label=g") != std::string::npos);
    CHECK(r.out.find("physical=true") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["sigma1"].get<double>() == doctest::Approx(std::sqrt(0.375)));

    const Result narrow = run({"dist", "--which", "g", "--sigma1", "0.2", "--sigma2", "0.2", "--out",
                               scratch("narrow.csv").string()});
    CHECK(narrow.code == 0);
    CHECK(narrow.out.find("physical=false") != std::string::npos);
}

TEST_CASE("moments report") {
    const Result r = run({"moments", "--state", "coherent:1.5", "--eta1", "0.8", "--eta2", "0.6", "--targets", "1,1",
                          "--targets", "2,1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["method"] == "grid_quadrature");
    REQUIRE(j["targets"].size() == 2);
    CHECK(j["targets"][0]["g_path_value"]["re"].get<double>() == doctest::Approx(2.25).epsilon(5e-3));
    CHECK(j["targets"][0]["oracle_value"]["re"].get<double>() == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(j["targets"][0]["abs_error"].get<double>() < 5e-3);
    CHECK(j["targets"][1]["abs_error"].get<double>() < 5e-3);
}

TEST_CASE("simulate is reproducible") {
    const std::vector<std::string> args = {"simulate", "--state",  "coherent:1.5", "--eta1",   "0.8", "--eta2",
                                           "0.8",      "--count",  "1000000",      "--seed",   "42",  "--targets",
                                           "1,1"};
    const Result a = run(args);
    const Result b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    const auto& t = j["targets"][0];
    CHECK(std::abs(t["estimate"]["re"].get<double>() - 2.25) < 3 * t["std_error"].get<double>());
    CHECK_FALSE(j.contains("wall_time_s"));

    const fs::path samples = scratch("samples.csv");
    const Result c = run({"simulate", "--count", "200", "--seed", "3", "--targets", "1,1", "--timing",
                          "--emit-samples", samples.string()});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out).contains("wall_time_s"));
    CHECK(slurp(samples).rfind("# seed,eta1,eta2,count,state\n# 3,", 0) == 0);
}

TEST_CASE("ordering table") {
    const Result one = run({"ordering", "1", "1", "--s", "-1"});
    CHECK(one.code == 0);
    CHECK(one.out == "k=0: 1\nk=1: 0\n");
    const Result two = run({"ordering", "2", "2", "--s", "-2"});
    CHECK(two.out == "k=0: 1\nk=1: 2\nk=2: 0.5\n");
    CHECK(run({"ordering", "0", "3", "--s", "-1.5"}).out == "k=0: 1\n");

    const Result checked = run({"ordering", "2", "2", "--s", "-2", "--check", "--r", "0.35"});
    REQUIRE(checked.code == 0);
    const auto pos = checked.out.find("residual=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(checked.out.substr(pos + 9)) < 1e-9);
}

TEST_CASE("exit codes") {
    const Result bad_count = run({"simulate", "--count", "0", "--targets", "1,1"});
    CHECK(bad_count.code == 2);
    CHECK(bad_count.err.find("InsufficientSamples") != std::string::npos);

    CHECK(run({"simulate", "--eta1", "1.2", "--targets", "1,1"}).code == 2);
    CHECK(run({"dist", "--state", "bogus:1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"ordering", "1", "1"}).code == 2);

    const Result leak = run({"dist", "--state", "coherent:5", "--dim", "16", "--out", scratch("leak.csv").string()});
    CHECK(leak.code == 1);
    CHECK(leak.err.find("LeakageError") != std::string::npos);
}
