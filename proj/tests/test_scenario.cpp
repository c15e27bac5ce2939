#include <doctest.h>

#include <filesystem>
#include <string>

#include <json.hpp>

#include "uniflab/scenario.hpp"

using namespace uniflab;
using nlohmann::json;

namespace {

const std::string kDir = UNIFLAB_SCENARIO_DIR;

std::string flagship_path() { return kDir + "/flagship.json"; }

constexpr const char* kMinimal = R"({
  "n": 4,
  "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
  "subgroup": {"point_stabilizer": 0}
})";

std::string error_of(const std::string& text) {
    try {
        parse_scenario_text(text, "test");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("a minimal scenario parses with defaults") {
    Scenario sc = parse_scenario_text(kMinimal, "test");
    CHECK(sc.n == 4);
    CHECK(sc.labels.empty());
    CHECK(sc.family_mode == FamilyMode::FilterBase);
    REQUIRE(sc.family_seeds.size() == 1);
    CHECK(sc.family_seeds.front() == Partition::from_blocks(4, {{0, 1}, {2, 3}}));
    CHECK(sc.subgroup.kind == SubgroupSpec::Kind::PointStabilizer);
    CHECK(sc.subgroup.point == 0);
    CHECK(sc.checks.empty());
    CHECK_FALSE(sc.caps.symmetric_group.has_value());
    CHECK(sc.caps.family == 10000);
    CHECK(sc.caps.random_instances == 1000);
}

TEST_CASE("scenario rejection messages carry the origin and the offense") {
    CHECK(error_of("{").find("test: malformed scenario") != std::string::npos);
    CHECK(error_of("[1]").find("scenario must be an object") != std::string::npos);
    CHECK(error_of(R"({"n": 4})").find("missing field 'family'") != std::string::npos);
    CHECK(error_of(R"({"n": 0, "family": {"mode": "filter-base", "seeds": [[[0]]]},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("n must lie in [1, 8]") != std::string::npos);
    CHECK(error_of(R"({"n": 4, "surprise": 1,
                      "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("unknown field 'surprise'") != std::string::npos);
    CHECK(error_of(R"({"n": 4,
                      "family": {"mode": "half-open", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("family mode") != std::string::npos);
    CHECK(error_of(R"({"n": 4,
                      "family": {"mode": "filter-base", "seeds": []},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("nonempty list of partitions") != std::string::npos);
    CHECK(error_of(R"({"n": 4, "labels": ["a"],
                      "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("labels must name every carrier point") != std::string::npos);
    CHECK(error_of(R"js({"n": 4,
                      "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0, "elements": ["()"]}})js")
              .find("exactly one of") != std::string::npos);
    CHECK(error_of(R"({"n": 4,
                      "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0},
                      "checks": ["verify-everything"]})")
              .find("unknown check 'verify-everything'") != std::string::npos);
    CHECK(error_of(R"({"n": 4,
                      "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
                      "subgroup": {"point_stabilizer": 0},
                      "caps": {"random_instances": 0}})")
              .find("random_instances must be positive") != std::string::npos);
    // partition validation flows through with the scenario origin attached
    CHECK(error_of(R"({"n": 4,
                      "family": {"mode": "filter-base", "seeds": [[[0, 1]]]},
                      "subgroup": {"point_stabilizer": 0}})")
              .find("do not cover") != std::string::npos);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ValidationError);
}

TEST_CASE("explicit element subgroups are parsed and audited") {
    Scenario good = parse_scenario_text(R"js({
        "n": 4,
        "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
        "subgroup": {"elements": ["()", "(0 1)"]}
    })js", "test");
    CHECK(good.subgroup.kind == SubgroupSpec::Kind::Elements);
    RunOutcome out = run(good, "quotient", RunOptions{});
    CHECK(out.all_pass);

    // a set that is not closed surfaces as invalid input when resolved
    Scenario bad = parse_scenario_text(R"js({
        "n": 4,
        "family": {"mode": "filter-base", "seeds": [[[0, 1], [2, 3]]]},
        "subgroup": {"elements": ["(0 1 2)"]}
    })js", "test");
    CHECK_THROWS_AS(run(bad, "quotient", RunOptions{}), ValidationError);
}

TEST_CASE("the full check list is fixed") {
    const auto& names = check_names();
    REQUIRE(names.size() == 8);
    CHECK(names.front() == "verify-losa");
    CHECK(names.back() == "itzkowitz-report");
}

TEST_CASE("the flagship scenario reproduces the frozen quotient structure") {
    Scenario sc = load_scenario(flagship_path());
    RunOptions opts;
    opts.format = "canonical";
    RunOutcome out = run(sc, "quotient", opts);
    CHECK(out.all_pass);

    json doc = json::parse(out.canonical);
    CHECK(doc["version"] == "uniflab 1.0.0");
    CHECK(doc["command"] == "quotient");
    CHECK(doc["pass"] == true);
    REQUIRE(doc["checks"].size() == 1);
    const json& q = doc["checks"][0];
    CHECK(q["name"] == "quotient");
    CHECK(q["pass"] == true);
    CHECK(q["details"]["cosets"] == 4);
    CHECK(q["details"]["left_min_partition"] == json::parse("[[0, 1, 2, 3]]"));
    CHECK(q["details"]["right_min_partition"] == json::parse("[[0, 1], [2, 3]]"));
    CHECK(q["details"]["left_discrete"] == false);
    CHECK(q["details"]["right_discrete"] == false);
    CHECK(q["details"]["left_matches_topology"] == true);
    CHECK(q["details"]["right_matches_topology"] == false);
}

TEST_CASE("the flagship report exhibits the one-sided gap") {
    Scenario sc = load_scenario(flagship_path());
    RunOptions opts;
    opts.format = "canonical";
    RunOutcome out = run(sc, "itzkowitz-report", opts);
    CHECK(out.all_pass);

    json doc = json::parse(out.canonical);
    const json& r = doc["checks"][0];
    CHECK(r["details"]["uniformities_equal"] == false);
    CHECK(r["details"]["every_left_uc_function_is_right_uc"] == true);
    CHECK(r["details"]["gap_exhibited"] == true);
    CHECK(r["details"]["degenerate"] == false);
    CHECK(r["details"]["oracle_confirmed"] == true);
    CHECK(r["details"]["base_point"] == 0);
    CHECK(r["details"]["bijection_equivariant"] == true);
    CHECK(r["details"]["right_min_on_points"] == json::parse("[[0, 1], [2, 3]]"));
    CHECK(r["details"]["class_order"] == "first-inside-second");
}

TEST_CASE("runs are deterministic byte for byte") {
    Scenario sc = load_scenario(flagship_path());
    RunOptions opts;
    opts.format = "canonical";
    RunOutcome a = run(sc, "all", opts);
    RunOutcome b = run(sc, "all", opts);
    CHECK(a.canonical == b.canonical);
    CHECK(a.all_pass);
    CHECK(a.timings_ms.size() == b.timings_ms.size());

    // prose carries the same verdict in readable form
    RunOutcome p = run(sc, "all", RunOptions{});
    CHECK(p.prose.find("overall: PASS") != std::string::npos);
    CHECK(p.prose.find("[PASS]") != std::string::npos);
}

TEST_CASE("command and option validation fail loudly") {
    Scenario sc = load_scenario(flagship_path());
    CHECK_THROWS_AS(run(sc, "verify-everything", RunOptions{}), ValidationError);
    RunOptions bad_format;
    bad_format.format = "yaml";
    CHECK_THROWS_AS(run(sc, "quotient", bad_format), ValidationError);
    RunOptions tight_cap;
    tight_cap.flag_cap_n = 3;
    CHECK_THROWS_AS(run(sc, "quotient", tight_cap), CapError);
    RunOptions low_default;
    low_default.default_cap_n = 3;   // the flag takes precedence over it
    low_default.flag_cap_n = 4;
    CHECK(run(sc, "quotient", low_default).all_pass);
}

TEST_CASE("the axiom scenario passes and the degenerate one says why it is dull") {
    RunOptions opts;
    opts.format = "canonical";

    RunOutcome losa = run(load_scenario(kDir + "/losa.json"), "all", opts);
    CHECK(losa.all_pass);
    json ldoc = json::parse(losa.canonical);
    REQUIRE(ldoc["checks"].size() == 1);
    CHECK(ldoc["checks"][0]["name"] == "verify-losa");
    CHECK(ldoc["checks"][0]["details"]["axiom_separation"] == true);
    CHECK(ldoc["checks"][0]["details"]["family_size"] == 15);

    RunOutcome deg = run(load_scenario(kDir + "/degenerate.json"), "all", opts);
    CHECK(deg.all_pass);
    json ddoc = json::parse(deg.canonical);
    CHECK(ddoc["checks"][0]["details"]["degenerate"] == true);
    CHECK(ddoc["checks"][0]["details"]["uniformities_equal"] == true);
    CHECK(ddoc["checks"][0]["details"]["gap_exhibited"] == false);
    std::string banner = ddoc["checks"][0]["details"]["banner"];
    CHECK(banner.find("DEGENERATE FAMILY") != std::string::npos);
}

TEST_CASE("every shipped scenario parses and names real checks") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kDir)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        Scenario sc = load_scenario(entry.path().string());
        CHECK(sc.n >= 1);
        CHECK(sc.n <= 8);
        CHECK_FALSE(sc.family_seeds.empty());
    }
    CHECK(seen == 9);
}
