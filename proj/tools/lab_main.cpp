#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hypdyn/errors.hpp"
#include "hypdyn/lab.hpp"
#include "hypdyn/parallel.hpp"

namespace lab = hypdyn::lab;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

lab::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hypdyn::ConfigError("", "cannot read config file " + path);
    try {
        return lab::json::parse(in);
    } catch (const lab::json::parse_error& e) {
        throw hypdyn::ConfigError("", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

int run_scenario(const std::string& scenario, const std::string& config_path, const std::string& out,
                 std::optional<std::uint64_t> seed, int threads) {
    const lab::json cfg = config_path.empty() ? lab::default_config(scenario) : load_config(config_path);
    lab::RunOptions opts;
    opts.out_dir = out;
    opts.seed = seed;
    opts.threads = threads;
    const auto result = lab::run(scenario, cfg, opts);
    for (const auto& v : result.verdicts)
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
    std::cout << (result.passed() ? "scenario passed" : "scenario failed") << " (" << out << ")\n";
    return lab::exit_code(result);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperspace entropy lab"};
    app.require_subcommand(1);

    std::string scenario, config_path, out;
    std::uint64_t seed = 0;
    int threads = hypdyn::default_threads();
    auto* run = app.add_subcommand("run", "run one scenario");
    run->add_option("scenario", scenario, "scenario name (see 'lab list')")->required();
    run->add_option("--config", config_path, "scenario config (JSON); built-in defaults when omitted");
    run->add_option("--out", out, "output directory")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));

    auto* list = app.add_subcommand("list", "list scenarios");
    auto* defaults = app.add_subcommand("defaults", "print the default config of a scenario");
    std::string defaults_name;
    defaults->add_option("scenario", defaults_name)->required();
    auto* selftest = app.add_subcommand("selftest", "run the invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& s : lab::catalog()) std::cout << s.name << "\t" << s.claim << '\n';
            return 0;
        }
        if (*defaults) {
            std::cout << lab::default_config(defaults_name).dump(2) << '\n';
            return 0;
        }
        if (*selftest) return lab::selftest(std::cout) == 0 ? 0 : kExitInvariant;
        std::optional<std::uint64_t> seed_override;
        if (*seed_opt) seed_override = seed;
        return run_scenario(scenario, config_path, out, seed_override, threads);
    } catch (const hypdyn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const hypdyn::InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
}
