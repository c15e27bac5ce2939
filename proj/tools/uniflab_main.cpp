#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uniflab/errors.hpp"
#include "uniflab/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCapExceeded = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite checks for one-sided uniformities on permutation coset spaces"};

    std::string command;
    std::string scenario_path;
    std::string format = "prose";
    std::optional<int> cap_n;
    std::uint64_t seed = 1729;

    std::string command_help = "one of:";
    for (const std::string& name : uniflab::check_names()) command_help += " " + name;
    command_help += " all";

    app.add_option("command", command, command_help)->required();
    app.add_option("--scenario", scenario_path, "path to a scenario file")->required();
    app.add_option("--format", format, "report format: canonical or prose");
    app.add_option("--cap-n", cap_n, "carrier cap for the symmetric group");
    app.add_option("--seed", seed, "seed for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        // CLI11's own exit code for --help is 0; anything else is usage
        return code == 0 ? kExitPass : kExitInvalidInput;
    }

    uniflab::RunOptions options;
    options.format = format;
    options.seed = seed;
    options.flag_cap_n = cap_n;
    if (const char* env = std::getenv("UNIFLAB_CAP_N")) {
        try {
            options.default_cap_n = std::stoi(env);
        } catch (...) {
            std::cerr << "uniflab: ignoring non-numeric UNIFLAB_CAP_N\n";
        }
    }

    try {
        uniflab::Scenario scenario = uniflab::load_scenario(scenario_path);
        uniflab::RunOutcome outcome = uniflab::run(scenario, command, options);
        for (const auto& [name, ms] : outcome.timings_ms)
            std::cerr << "uniflab: " << name << " took " << ms << " ms\n";
        std::cout << (options.format == "canonical" ? outcome.canonical : outcome.prose);
        return outcome.all_pass ? kExitPass : kExitCheckFailed;
    } catch (const uniflab::CapError& e) {
        std::cerr << "uniflab: cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const uniflab::ValidationError& e) {
        std::cerr << "uniflab: invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "uniflab: error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
