#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hypdyn/errors.hpp"
#include "hypdyn/lab.hpp"

namespace fs = std::filesystem;
using namespace hypdyn;
using lab::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("hypdyn_test_lab_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json small_interval() {
    json c = lab::default_config("interval_C");
    c["n"] = {8, 16, 24, 32, 40, 48};
    c["epsilons"] = {0.125, 0.0625};
    c.erase("uniform");
    c["expect"]["arcs"]["tol"] = 1.0;
    c["expect"]["points"]["tol"] = 1.0;
    return c;
}

std::string pointer_of(const std::string& scenario, const json& cfg) {
    try {
        lab::run(scenario, cfg, {scratch("ptr").string(), std::nullopt, 1});
    } catch (const ConfigError& e) {
        return e.pointer();
    }
    return "<no error>";
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LAB_EXE) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("catalog") {
    const auto& c = lab::catalog();
    CHECK(c.size() == 8);
    const char* names[] = {"star_hpol", "interval_C", "interval_Cn", "fullshift_code",
                           "coding_crosscheck", "isometry_check", "cylinder_check", "product_power"};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(c[i].name == names[i]);
        CHECK_FALSE(c[i].claim.empty());
        CHECK(lab::default_config(c[i].name).contains("expect") == (c[i].name != "cylinder_check"));
    }
}

TEST_CASE("unknown scenario lists valid names") {
    CHECK_THROWS_WITH_AS(lab::run("nope", json::object(), {"x", std::nullopt, 1}),
                         doctest::Contains("star_hpol, interval_C"), ConfigError);
}

TEST_CASE("config errors carry JSON pointers") {
    json c = small_interval();
    c["n"] = {8, 4, 16, 32};
    CHECK(pointer_of("interval_C", c) == "/n/1");
    c = small_interval();
    c["homeo"]["map"]["family"] = "spline";
    CHECK(pointer_of("interval_C", c) == "/homeo/map/family");
    c = small_interval();
    c["homeo"]["map"] = {{"family", "pwl"}, {"points", {{0, 0}, {0.5, 0.7}, {0.4, 0.8}, {1, 1}}}};
    CHECK(pointer_of("interval_C", c) == "/homeo/map/points");
    c = small_interval();
    c["extra"] = 1;
    CHECK(pointer_of("interval_C", c) == "/extra");
    c = small_interval();
    c["expect"]["arcs"].erase("tol");
    CHECK(pointer_of("interval_C", c) == "/expect/arcs/tol");
    c = small_interval();
    c["epsilons"] = {0.1, 0.2};
    CHECK(pointer_of("interval_C", c) == "/epsilons/1");
    c = small_interval();
    c["seed"] = -3;
    CHECK(pointer_of("interval_C", c) == "/seed");
    c = lab::default_config("star_hpol");
    c["homeo"]["maps"] = {{{"family", "power"}, {"p", 2}}};
    CHECK(pointer_of("star_hpol", c) == "/homeo/maps");
    c = lab::default_config("interval_C");
    c["base"] = 1.0;
    CHECK(pointer_of("interval_C", c) == "/base");
}

TEST_CASE("edge maps from JSON") {
    const EdgeMap p = lab::edge_map_from_json(json::parse(R"({"family":"power","p":2.0})"), "/m");
    CHECK(p.forward(0.5) == 0.25);
    const EdgeMap q = lab::edge_map_from_json(json::parse(R"({"family":"pwl","points":[[0,0],[0.5,0.25],[1,1]]})"), "/m");
    CHECK(q.forward(0.5) == 0.25);
    CHECK_THROWS_AS(lab::edge_map_from_json(json::parse(R"({"family":"power"})"), "/m"), ConfigError);
    const StarHomeo h = lab::homeo_from_json(json::parse(R"({"k":2,"perm":[1,0],"map":{"family":"power","p":2}})"), "");
    CHECK(edge_period(h) == 2);
}

TEST_CASE("runs are deterministic across thread counts and echo expectations") {
    const json c = small_interval();
    const auto a = scratch("det1"), b = scratch("det8");
    const auto ra = lab::run("interval_C", c, {a.string(), std::nullopt, 1});
    const auto rb = lab::run("interval_C", c, {b.string(), std::nullopt, 8});
    CHECK(ra.files == rb.files);
    for (const auto& f : ra.files) CHECK(slurp(a / f) == slurp(b / f));
    CHECK(ra.expectations == c["expect"]);
    CHECK(json::parse(slurp(a / "results.json"))["expectations"] == c["expect"]);
    const std::string csv = slurp(a / "sep_arcs.csv");
    CHECK(csv.rfind("n,epsilon,count,grid,seed\n", 0) == 0);
    const json fit = json::parse(slurp(a / "fit_arcs.json"));
    for (const char* key : {"slope", "intercept", "r2", "window", "mode"}) CHECK(fit.contains(key));
    CHECK(fit.size() == 5);
}

TEST_CASE("seed override is echoed") {
    const auto out = scratch("seed");
    const auto r = lab::run("isometry_check",
                            [] {
                                json c = lab::default_config("isometry_check");
                                c["samples"] = 50;
                                c["pairs"] = 50;
                                return c;
                            }(),
                            {out.string(), 99u, 1});
    CHECK(r.config["seed"] == 99u);
    CHECK(json::parse(slurp(out / "config.json"))["seed"] == 99u);
    CHECK(r.passed());
}

TEST_CASE("verdicts follow declared tolerances") {
    json c = small_interval();
    c["expect"]["arcs"] = {{"exponent", 7}, {"tol", 0.1}};
    const auto r = lab::run("interval_C", c, {scratch("verdict").string(), std::nullopt, 1});
    CHECK_FALSE(r.passed());
    CHECK(lab::exit_code(r) == 1);
}

TEST_CASE("complexity tables") {
    const auto out = scratch("cc");
    const auto r = lab::run("coding_crosscheck", lab::default_config("coding_crosscheck"), {out.string(), std::nullopt, 2});
    CHECK(r.passed());
    const std::string csv = slurp(out / "complexity_sampled.csv");
    CHECK(csv.rfind("m,count,family,k\n1,8,at_most_one_per_track,3\n", 0) == 0);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("list") == 0);
    CHECK(run_cli("selftest") == 0);
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    CHECK(run_cli("run cylinder_check --out " + (dir / "ok").string()) == 0);

    json bad = small_interval();
    bad["expect"]["points"] = {{"exponent", 9}, {"tol", 0.1}};
    std::ofstream(dir / "fail.json") << bad.dump();
    CHECK(run_cli("run interval_C --config " + (dir / "fail.json").string() + " --out " + (dir / "f").string()) == 1);

    std::ofstream(dir / "broken.json") << "{\"n\": [1, 2,";
    CHECK(run_cli("run interval_C --config " + (dir / "broken.json").string() + " --out " + (dir / "b").string()) == 2);
    CHECK(run_cli("run nosuch --out " + (dir / "n").string()) == 2);

    json collide = lab::default_config("fullshift_code");
    collide["homeo"]["map"]["p"] = 2;
    collide["base"] = {{0, 0.5}, {0, 0.25}};
    std::ofstream(dir / "collide.json") << collide.dump();
    CHECK(run_cli("run fullshift_code --config " + (dir / "collide.json").string() + " --out " + (dir / "c").string()) == 3);
}
