#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uniflab/family.hpp"
#include "uniflab/partition.hpp"
#include "uniflab/perm.hpp"

namespace uniflab {

// How the scenario names the subgroup H of the coset space.
struct SubgroupSpec {
    enum class Kind { PointStabilizer, PartitionStabilizer, Elements };
    Kind kind = Kind::PointStabilizer;
    int point = 0;                        // PointStabilizer
    std::vector<std::vector<int>> blocks; // PartitionStabilizer
    std::vector<std::string> elements;    // Elements, perm notation
};

struct ScenarioCaps {
    std::optional<int> symmetric_group;   // default 7 unless overridden
    std::size_t family = 10000;
    int random_instances = 1000;
};

// One self-contained problem instance, loaded from JSON. See the README
// for the grammar.
struct Scenario {
    int n = 0;
    std::vector<std::string> labels;      // empty or size n
    FamilyMode family_mode = FamilyMode::FilterBase;
    std::vector<Partition> family_seeds;
    SubgroupSpec subgroup;
    std::vector<std::string> checks;      // empty means "all"
    ScenarioCaps caps;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin);

struct RunOptions {
    std::string format = "prose";         // "prose" or "canonical"
    std::uint64_t seed = 1729;
    // Flag > scenario cap > default_cap (the CLI folds the environment
    // override into default_cap).
    std::optional<int> flag_cap_n;
    int default_cap_n = 7;
};

struct RunOutcome {
    bool all_pass = false;
    std::string canonical;   // deterministic JSON document, sorted keys
    std::string prose;       // same content rendered for reading
    std::vector<std::pair<std::string, double>> timings_ms;
};

// The named commands, in default execution order for "all".
const std::vector<std::string>& check_names();

// Executes one command ("verify-losa", ..., "all") against the scenario.
// Throws ValidationError for unknown commands or bad scenario data and
// CapError when a cap is exceeded.
RunOutcome run(const Scenario& scenario, const std::string& command,
               const RunOptions& options);

} // namespace uniflab
