#include "uniflab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "uniflab/oracle.hpp"
#include "uniflab/quotient.hpp"
#include "uniflab/uc.hpp"

namespace uniflab {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "uniflab 1.0.0";

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ValidationError(origin + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end()) fail(origin, std::string("missing field '") + key + "'");
    return *it;
}

int int_field(const json& j, const char* key, const std::string& origin) {
    const json& v = field(j, key, origin);
    if (!v.is_number_integer()) fail(origin, std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

Partition parse_partition(int n, const json& arr, const std::string& origin) {
    if (!arr.is_array()) fail(origin, "a partition must be a list of blocks");
    std::vector<std::vector<int>> blocks;
    for (const json& b : arr) {
        if (!b.is_array()) fail(origin, "a partition block must be a list of points");
        std::vector<int> block;
        for (const json& x : b) {
            if (!x.is_number_integer()) fail(origin, "partition entries must be integers");
            block.push_back(x.get<int>());
        }
        blocks.push_back(std::move(block));
    }
    return Partition::from_blocks(n, blocks);
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& origin) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(origin, "unknown field '" + it.key() + "'");
    }
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("malformed scenario: ") + e.what());
    }
    if (!j.is_object()) fail(origin, "scenario must be an object");
    reject_unknown_keys(j, {"n", "labels", "family", "subgroup", "checks", "caps"}, origin);

    Scenario sc;
    sc.n = int_field(j, "n", origin);
    if (sc.n < 1 || sc.n > Perm::max_points)
        fail(origin, "n must lie in [1, " + std::to_string(Perm::max_points) + "]");

    if (j.contains("labels")) {
        const json& labels = j["labels"];
        if (!labels.is_array()) fail(origin, "labels must be a list of strings");
        for (const json& l : labels) {
            if (!l.is_string()) fail(origin, "labels must be a list of strings");
            sc.labels.push_back(l.get<std::string>());
        }
        if (static_cast<int>(sc.labels.size()) != sc.n)
            fail(origin, "labels must name every carrier point");
    }

    const json& fam = field(j, "family", origin);
    if (!fam.is_object()) fail(origin, "family must be an object");
    reject_unknown_keys(fam, {"mode", "seeds"}, origin);
    std::string mode = field(fam, "mode", origin).get<std::string>();
    if (mode == "filter-base") sc.family_mode = FamilyMode::FilterBase;
    else if (mode == "group-topology") sc.family_mode = FamilyMode::GroupTopology;
    else fail(origin, "family mode must be 'filter-base' or 'group-topology'");
    const json& seeds = field(fam, "seeds", origin);
    if (!seeds.is_array() || seeds.empty())
        fail(origin, "family seeds must be a nonempty list of partitions");
    for (const json& s : seeds)
        sc.family_seeds.push_back(parse_partition(sc.n, s, origin));

    const json& sub = field(j, "subgroup", origin);
    if (!sub.is_object()) fail(origin, "subgroup must be an object");
    reject_unknown_keys(sub, {"point_stabilizer", "partition_stabilizer", "elements"}, origin);
    int ways = static_cast<int>(sub.contains("point_stabilizer")) +
               static_cast<int>(sub.contains("partition_stabilizer")) +
               static_cast<int>(sub.contains("elements"));
    if (ways != 1)
        fail(origin, "subgroup needs exactly one of point_stabilizer, partition_stabilizer, elements");
    if (sub.contains("point_stabilizer")) {
        sc.subgroup.kind = SubgroupSpec::Kind::PointStabilizer;
        sc.subgroup.point = int_field(sub, "point_stabilizer", origin);
    } else if (sub.contains("partition_stabilizer")) {
        sc.subgroup.kind = SubgroupSpec::Kind::PartitionStabilizer;
        Partition p = parse_partition(sc.n, sub["partition_stabilizer"], origin);
        sc.subgroup.blocks = p.blocks();
    } else {
        sc.subgroup.kind = SubgroupSpec::Kind::Elements;
        const json& els = sub["elements"];
        if (!els.is_array() || els.empty())
            fail(origin, "subgroup elements must be a nonempty list of permutations");
        for (const json& e : els) {
            if (!e.is_string()) fail(origin, "subgroup elements must be strings");
            sc.subgroup.elements.push_back(e.get<std::string>());
        }
    }

    if (j.contains("checks")) {
        const json& checks = j["checks"];
        if (!checks.is_array()) fail(origin, "checks must be a list of command names");
        for (const json& c : checks) {
            if (!c.is_string()) fail(origin, "checks must be a list of command names");
            std::string name = c.get<std::string>();
            const auto& known = check_names();
            if (std::find(known.begin(), known.end(), name) == known.end())
                fail(origin, "unknown check '" + name + "'");
            sc.checks.push_back(std::move(name));
        }
    }

    if (j.contains("caps")) {
        const json& caps = j["caps"];
        if (!caps.is_object()) fail(origin, "caps must be an object");
        reject_unknown_keys(caps, {"symmetric_group", "family", "random_instances"}, origin);
        if (caps.contains("symmetric_group"))
            sc.caps.symmetric_group = int_field(caps, "symmetric_group", origin);
        if (caps.contains("family")) {
            int f = int_field(caps, "family", origin);
            if (f < 1) fail(origin, "family cap must be positive");
            sc.caps.family = static_cast<std::size_t>(f);
        }
        if (caps.contains("random_instances")) {
            sc.caps.random_instances = int_field(caps, "random_instances", origin);
            if (sc.caps.random_instances < 1)
                fail(origin, "random_instances must be positive");
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "verify-losa",  "verify-maile", "verify-va",  "verify-tolu",
        "verify-pahulu", "quotient",    "uc-compare", "itzkowitz-report",
    };
    return names;
}

namespace {

// ---- shared context -------------------------------------------------------

struct Ctx {
    const Scenario& sc;
    const RunOptions& opts;
    Subgroup G;
    PartitionFamily family;
    Subgroup H;
    CosetSpace C;
};

Subgroup resolve_subgroup(const Scenario& sc) {
    switch (sc.subgroup.kind) {
    case SubgroupSpec::Kind::PointStabilizer:
        return Subgroup::point_stabilizer(sc.n, sc.subgroup.point);
    case SubgroupSpec::Kind::PartitionStabilizer:
        return Subgroup::stabilizer_of_partition(
            Partition::from_blocks(sc.n, sc.subgroup.blocks));
    case SubgroupSpec::Kind::Elements: {
        std::vector<Perm> elems;
        for (const std::string& text : sc.subgroup.elements)
            elems.push_back(parse_perm(sc.n, text));
        return Subgroup::from_elements(sc.n, std::move(elems));
    }
    }
    throw Error("unreachable subgroup kind");
}

Ctx build_context(const Scenario& sc, const RunOptions& opts) {
    int cap = opts.flag_cap_n ? *opts.flag_cap_n
                              : sc.caps.symmetric_group.value_or(opts.default_cap_n);
    Subgroup G = Subgroup::symmetric_group(sc.n, cap);
    PartitionFamily family = close_family(sc.n, sc.family_seeds, sc.family_mode,
                                          sc.caps.family);
    Subgroup H = resolve_subgroup(sc);
    CosetSpace C = build_cosets(G, H);
    return Ctx{sc, opts, std::move(G), std::move(family), std::move(H), std::move(C)};
}

// ---- serialization helpers ------------------------------------------------

json partition_json(const Partition& p) {
    json out = json::array();
    for (const auto& b : p.blocks()) out.push_back(b);
    return out;
}

json function_json(const CarrierFunction& f) {
    json out = json::array();
    for (const Rational& v : f.values()) out.push_back(to_string(v));
    return out;
}

std::string order_name(ClassOrder o) {
    switch (o) {
    case ClassOrder::Equal: return "equal";
    case ClassOrder::FirstInSecond: return "first-inside-second";
    case ClassOrder::SecondInFirst: return "second-inside-first";
    case ClassOrder::Incomparable: return "incomparable";
    }
    return "?";
}

struct NamedResult {
    std::string name;
    bool pass = false;
    bool applicable = true;
    std::string note;
    std::string counterexample;
    json details = json::object();
    std::vector<std::string> prose;
};

// ---- the individual commands ----------------------------------------------

NamedResult run_losa(const Ctx& ctx) {
    NamedResult r;
    r.name = "verify-losa";
    AxiomReport rep = topology_axiom_report(ctx.family, ctx.G);

    // what the family's shape promises: identity and idempotence always;
    // separation exactly when the overall meet reaches the singletons.
    // The family is meet-closed (closure built it), and St_beta sits
    // inside St_gamma exactly when beta refines gamma, so the finest
    // member decides every conjugation instance: the axiom reduces to the
    // overall meet being invariant under pushforward. (Closure under
    // pushforward is sufficient but not necessary, so it is reported as
    // information, never used as the prediction.)
    const Partition& mu = ctx.family.overall_meet();
    bool meet_invariant = true;
    for (int a = 0; a < ctx.sc.n && meet_invariant; ++a)
        for (int b = a + 1; b < ctx.sc.n; ++b)
            if (!(pushforward(Perm::transposition(ctx.sc.n, a, b), mu) == mu)) {
                meet_invariant = false;
                break;
            }
    bool closed_under_pushforward = true;
    for (const Partition& p : ctx.family.members()) {
        for (int a = 0; a < ctx.sc.n && closed_under_pushforward; ++a)
            for (int b = a + 1; b < ctx.sc.n; ++b)
                if (!ctx.family.contains(pushforward(Perm::transposition(ctx.sc.n, a, b), p))) {
                    closed_under_pushforward = false;
                    break;
                }
        if (!closed_under_pushforward) break;
    }
    bool separating = mu.is_singletons();

    bool predicted_matches =
        rep.identity_ok && rep.composition_ok &&
        rep.conjugation_ok == meet_invariant &&
        rep.separation_ok == separating;

    // stabilizer meet identity across every member pair
    bool meets_ok = true;
    std::size_t pair_count = 0;
    const auto& members = ctx.family.members();
    for (std::size_t i = 0; i < members.size() && meets_ok; ++i)
        for (std::size_t j = i; j < members.size(); ++j) {
            ++pair_count;
            if (!stabilizer_meet_identity(members[i], members[j])) {
                meets_ok = false;
                r.counterexample = "stabilizer meet identity fails for " +
                                   members[i].to_string() + " and " + members[j].to_string();
                break;
            }
        }

    // separation witnesses for every non-identity element, whenever the
    // family is separating (the witness partition need not be a member)
    bool witnesses_ok = true;
    if (separating) {
        for (const Perm& g : ctx.G.elements()) {
            if (g.is_identity()) continue;
            Partition w = separation_witness(g);
            if (Subgroup::stabilizer_of_partition(w).contains(g)) {
                witnesses_ok = false;
                r.counterexample = "separation witness failed to exclude " + to_cycles(g);
                break;
            }
        }
    }

    r.pass = predicted_matches && meets_ok && witnesses_ok;
    if (!predicted_matches && r.counterexample.empty()) {
        r.counterexample = "axiom report disagrees with the family's predicted axioms";
        if (!rep.conjugation_witness.empty())
            r.counterexample += " (conjugation witness " + rep.conjugation_witness + ")";
    }
    r.details["axiom_identity"] = rep.identity_ok;
    r.details["axiom_conjugation"] = rep.conjugation_ok;
    r.details["axiom_composition"] = rep.composition_ok;
    r.details["axiom_separation"] = rep.separation_ok;
    r.details["meet_invariant"] = meet_invariant;
    r.details["closed_under_pushforward"] = closed_under_pushforward;
    r.details["separating"] = separating;
    r.details["family_size"] = members.size();
    r.details["overall_meet"] = partition_json(ctx.family.overall_meet());
    r.details["stabilizer_meet_pairs"] = pair_count;

    r.prose.push_back("neighborhood axioms on " + std::to_string(members.size()) +
                      " member stabilizers:");
    r.prose.push_back(std::string("  identity contained in every member: ") +
                      (rep.identity_ok ? "yes" : "NO"));
    r.prose.push_back(std::string("  conjugation axiom: ") +
                      (rep.conjugation_ok ? "holds" : "fails") +
                      (meet_invariant ? " (overall meet is pushforward-invariant)"
                                      : " (overall meet moves under pushforward)"));
    r.prose.push_back(std::string("  idempotence under composition: ") +
                      (rep.composition_ok ? "yes" : "NO"));
    r.prose.push_back(std::string("  separation: ") +
                      (rep.separation_ok ? "yes" : "no") +
                      (separating ? " (meet reaches singletons)" : " (meet is coarser)"));
    r.prose.push_back("  stabilizer meet identity verified on " +
                      std::to_string(pair_count) + " pairs");
    return r;
}

NamedResult run_maile(const Ctx& ctx) {
    NamedResult r;
    r.name = "verify-maile";
    CheckResult c = check_open_subgroup_discrete(ctx.family, ctx.C);
    r.pass = c.pass;
    r.applicable = c.applicable;
    r.note = c.note;
    r.counterexample = c.counterexample;
    r.details["applicable"] = c.applicable;
    r.details["cosets"] = ctx.C.count();
    if (c.applicable) {
        r.prose.push_back("subgroup is open for the family (" + c.note + ")");
        r.prose.push_back(c.pass
            ? "image of the open stabilizer entourage is the diagonal and the left quotient uniformity is discrete"
            : "FAILED: " + c.counterexample);
    } else {
        r.prose.push_back("not applicable: " + c.note);
    }
    return r;
}

NamedResult run_va(const Ctx& ctx) {
    NamedResult r;
    r.name = "verify-va";
    std::mt19937_64 rng(ctx.opts.seed);
    const int instances = ctx.sc.caps.random_instances;

    auto random_function = [&rng](int m) {
        std::vector<Rational> values;
        values.reserve(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x) {
            long long num = static_cast<long long>(rng() % 13) - 6;
            long long den = 1 + static_cast<long long>(rng() % 4);
            values.emplace_back(num, den);
        }
        return CarrierFunction(std::move(values));
    };

    int fiber_failures = 0;
    for (int k = 0; k < instances; ++k) {
        int m = 2 + static_cast<int>(rng() % 5);   // carriers 2..6
        CheckResult c = check_fiber_uniform_continuity(random_function(m));
        if (!c.pass) {
            ++fiber_failures;
            if (r.counterexample.empty()) r.counterexample = c.counterexample;
        }
    }

    // agreement of the optimized decision with the blunt reference
    auto random_reflexive_symmetric = [&rng](int m) {
        Relation rel = Relation::diagonal(m);
        int extra = static_cast<int>(rng() % (static_cast<std::uint64_t>(m) * m / 2 + 1));
        for (int k = 0; k < extra; ++k) {
            int x = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            int y = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            rel.set(x, y);
            rel.set(y, x);
        }
        return rel;
    };
    int disagreements = 0;
    for (int k = 0; k < instances; ++k) {
        int m = 2 + static_cast<int>(rng() % 5);
        CarrierFunction f = random_function(m);
        std::vector<Relation> base;
        int members = 1 + static_cast<int>(rng() % 3);
        for (int b = 0; b < members; ++b) base.push_back(random_reflexive_symmetric(m));
        bool fast = is_uc(f, uniformity_from_base(base, BaseMode::FinestContaining,
                                                  "random agreement base"));
        bool slow = oracle::naive_uc(f, base);
        if (fast != slow) {
            ++disagreements;
            if (r.counterexample.empty())
                r.counterexample = "optimized and reference decisions disagree on instance " +
                                   std::to_string(k);
        }
    }

    r.pass = fiber_failures == 0 && disagreements == 0;
    r.details["instances"] = instances;
    r.details["fiber_failures"] = fiber_failures;
    r.details["agreement_disagreements"] = disagreements;
    r.prose.push_back(std::to_string(instances) +
                      " random functions constant on their fibers: " +
                      (fiber_failures == 0 ? "all pass" : std::to_string(fiber_failures) + " FAILED"));
    r.prose.push_back(std::to_string(instances) +
                      " random agreement instances against the reference decision: " +
                      (disagreements == 0 ? "all agree" : std::to_string(disagreements) + " DISAGREE"));
    return r;
}

NamedResult run_tolu(const Ctx& ctx) {
    NamedResult r;
    r.name = "verify-tolu";
    const int n = ctx.sc.n;
    if (n > 5)
        throw CapError("verify-tolu sweeps all partitions exhaustively; carrier capped at 5");

    int instances = 0;
    for (const Partition& gamma : all_partitions(n)) {
        for (int a = 0; a < n; ++a) {
            ++instances;
            CheckResult c = check_pullback_classes(ctx.G, gamma, a);
            if (!c.pass) {
                r.pass = false;
                r.counterexample = "gamma = " + gamma.to_string() + ", a = " +
                                   std::to_string(a) + ": " + c.counterexample;
                r.details["instances"] = instances;
                r.prose.push_back("FAILED at " + r.counterexample);
                return r;
            }
        }
    }

    // redirected-witness sweep over every f, a, c and every block-compatible gamma
    long long witness_count = 0;
    for (const Perm& f : ctx.G.elements()) {
        for (int a = 0; a < n; ++a) {
            for (int c = 0; c < n; ++c) {
                Perm g = redirect_image(f, a, c);
                if (g(a) != c) {
                    r.pass = false;
                    r.counterexample = "redirect failed: f = " + to_cycles(f) +
                                       ", a = " + std::to_string(a) + ", c = " + std::to_string(c);
                    return r;
                }
                for (const Partition& gamma : all_partitions(n)) {
                    if (!gamma.same_block(f(a), c)) continue;
                    ++witness_count;
                    if (!(pullback(f, gamma) == pullback(g, gamma))) {
                        r.pass = false;
                        r.counterexample = "pullbacks differ: f = " + to_cycles(f) +
                                           ", gamma = " + gamma.to_string();
                        return r;
                    }
                }
            }
        }
    }
    r.pass = true;
    r.details["instances"] = instances;
    r.details["redirected_witnesses"] = witness_count;
    r.prose.push_back("admissible image pairs match the block relation on " +
                      std::to_string(instances) + " (partition, point) instances");
    r.prose.push_back("redirected witnesses verified " + std::to_string(witness_count) +
                      " block-compatible (f, a, c, partition) cases");
    return r;
}

NamedResult run_pahulu(const Ctx& ctx) {
    NamedResult r;
    r.name = "verify-pahulu";
    const int n = ctx.sc.n;
    if (n > 5)
        throw CapError("verify-pahulu sweeps all partitions exhaustively; carrier capped at 5");

    int instances = 0;
    int fixed_rep_divergences = 0;
    for (const Partition& gamma : all_partitions(n)) {
        for (int a = 0; a < n; ++a) {
            ++instances;
            CheckResult c = check_right_image_transport(ctx.G, gamma, a);
            if (!c.pass) {
                r.pass = false;
                r.counterexample = "gamma = " + gamma.to_string() + ", a = " +
                                   std::to_string(a) + ": " + c.counterexample;
                return r;
            }
            if (!c.note.empty()) ++fixed_rep_divergences;

            // independent confirmation by the reference image
            Subgroup st_a = Subgroup::point_stabilizer(n, a);
            CosetSpace C = build_cosets(ctx.G, st_a);
            Relation fast = image_right(Subgroup::stabilizer_of_partition(gamma), C);
            Relation slow = oracle::naive_image(Side::Right,
                                                Subgroup::stabilizer_of_partition(gamma),
                                                ctx.G, st_a);
            if (!(fast == slow)) {
                r.pass = false;
                r.counterexample = "reference image disagrees at gamma = " +
                                   gamma.to_string() + ", a = " + std::to_string(a);
                return r;
            }
        }
    }
    r.pass = true;
    r.details["instances"] = instances;
    r.details["fixed_representative_divergences"] = fixed_rep_divergences;
    r.prose.push_back("transported right images equal the block relation on " +
                      std::to_string(instances) + " (partition, point) instances, "
                      "confirmed against the reference image");
    r.prose.push_back("fixed-representative membership diverged from the true image on " +
                      std::to_string(fixed_rep_divergences) +
                      " instances (why images are computed from lifts)");
    return r;
}

NamedResult run_quotient(const Ctx& ctx) {
    NamedResult r;
    r.name = "quotient";
    FiniteUniformity left = finest_quotient_uniformity(Side::Left, ctx.family, ctx.C);
    FiniteUniformity right = finest_quotient_uniformity(Side::Right, ctx.family, ctx.C);
    Partition topology = quotient_topology_partition(ctx.family, ctx.C);

    CheckResult cl = check_finest_contract(Side::Left, ctx.family, ctx.C, left);
    CheckResult cr = check_finest_contract(Side::Right, ctx.family, ctx.C, right);

    r.pass = cl.pass && cr.pass;
    if (!cl.pass) r.counterexample = "left: " + cl.counterexample;
    else if (!cr.pass) r.counterexample = "right: " + cr.counterexample;
    if (!cl.note.empty()) r.note = cl.note;

    r.details["cosets"] = ctx.C.count();
    r.details["left_min_partition"] = partition_json(left.min_partition());
    r.details["right_min_partition"] = partition_json(right.min_partition());
    r.details["left_provenance"] = left.provenance();
    r.details["right_provenance"] = right.provenance();
    r.details["left_discrete"] = left.is_discrete();
    r.details["right_discrete"] = right.is_discrete();
    r.details["quotient_topology"] = partition_json(topology);
    r.details["left_matches_topology"] = left.min_partition() == topology;
    r.details["right_matches_topology"] = right.min_partition() == topology;

    r.prose.push_back("coset space has " + std::to_string(ctx.C.count()) + " cosets");
    r.prose.push_back("finest left quotient uniformity: min partition " +
                      left.min_partition().to_string() +
                      (left.is_discrete() ? " (discrete)" : ""));
    r.prose.push_back("finest right quotient uniformity: min partition " +
                      right.min_partition().to_string() +
                      (right.is_discrete() ? " (discrete)" : ""));
    r.prose.push_back("quotient topology blocks: " + topology.to_string());
    r.prose.push_back(std::string("finest-uniformity contract (continuity and maximality): ") +
                      (r.pass ? "verified" : "FAILED"));
    if (!r.note.empty()) r.prose.push_back("note: " + r.note);
    return r;
}

NamedResult run_uc_compare(const Ctx& ctx) {
    NamedResult r;
    r.name = "uc-compare";
    FiniteUniformity left = finest_quotient_uniformity(Side::Left, ctx.family, ctx.C);
    FiniteUniformity right = finest_quotient_uniformity(Side::Right, ctx.family, ctx.C);
    ClassComparison cmp = uc_class_compare(left, right);

    r.pass = cmp.witnesses_verified;
    r.details["order"] = order_name(cmp.order);
    r.details["left_min_partition"] = partition_json(left.min_partition());
    r.details["right_min_partition"] = partition_json(right.min_partition());
    json w1 = json::array(), w2 = json::array();
    for (const CarrierFunction& f : cmp.only_in_first) w1.push_back(function_json(f));
    for (const CarrierFunction& f : cmp.only_in_second) w2.push_back(function_json(f));
    r.details["witnesses_left_only"] = w1;
    r.details["witnesses_right_only"] = w2;
    r.details["witnesses_verified"] = cmp.witnesses_verified;

    r.prose.push_back("uniformly continuous classes on the cosets: left is " +
                      order_name(cmp.order) + " relative to right");
    if (!cmp.only_in_second.empty())
        r.prose.push_back("witness in the right class only: values " +
                          std::string(function_json(cmp.only_in_second.front()).dump()));
    if (!cmp.only_in_first.empty())
        r.prose.push_back("witness in the left class only: values " +
                          std::string(function_json(cmp.only_in_first.front()).dump()));
    r.prose.push_back(std::string("witnesses verified: ") + (cmp.witnesses_verified ? "yes" : "NO"));
    return r;
}

NamedResult run_report(const Ctx& ctx) {
    NamedResult r;
    r.name = "itzkowitz-report";
    FiniteUniformity left = finest_quotient_uniformity(Side::Left, ctx.family, ctx.C);
    FiniteUniformity right = finest_quotient_uniformity(Side::Right, ctx.family, ctx.C);
    Partition topology = quotient_topology_partition(ctx.family, ctx.C);
    ClassComparison cmp = uc_class_compare(left, right);

    bool uniformities_equal = left == right;
    bool left_uc_inside_right = refines(right.min_partition(), left.min_partition());
    bool gap = left_uc_inside_right && !uniformities_equal;
    bool degenerate = ctx.family.overall_meet().is_singletons();
    bool left_matches_topology = left.min_partition() == topology;
    bool right_matches_topology = right.min_partition() == topology;

    // the left route must agree with the independently computed topology
    bool consistent = left_matches_topology && cmp.witnesses_verified;

    // reference confirmation end to end when the oracle caps allow it
    bool oracle_ran = false, oracle_ok = true;
    if (ctx.sc.n <= 5) {
        oracle_ran = true;
        Subgroup n0 = minimum_subgroup(ctx.family);
        for (Side side : {Side::Left, Side::Right}) {
            Relation img = oracle::naive_image(side, n0, ctx.G, ctx.H);
            Partition min = to_partition(oracle::naive_transitive_closure(img));
            const FiniteUniformity& u = side == Side::Left ? left : right;
            if (!(min == u.min_partition())) oracle_ok = false;
        }
    }

    r.pass = consistent && (!oracle_ran || oracle_ok);
    if (!left_matches_topology)
        r.counterexample = "left uniformity disagrees with the quotient topology route";
    else if (!cmp.witnesses_verified)
        r.counterexample = "comparison witnesses failed verification";
    else if (oracle_ran && !oracle_ok)
        r.counterexample = "reference pipeline disagrees with the optimized pipeline";

    std::string banner;
    if (degenerate)
        banner = "DEGENERATE FAMILY: the partitions separate every pair of points, so both "
                 "quotient uniformities collapse to the discrete uniformity and the "
                 "comparison carries no information at this size";

    r.details["left_min_partition"] = partition_json(left.min_partition());
    r.details["right_min_partition"] = partition_json(right.min_partition());
    r.details["quotient_topology"] = partition_json(topology);
    r.details["uniformities_equal"] = uniformities_equal;
    r.details["every_left_uc_function_is_right_uc"] = left_uc_inside_right;
    r.details["gap_exhibited"] = gap;
    r.details["degenerate"] = degenerate;
    r.details["banner"] = banner;
    r.details["left_matches_topology"] = left_matches_topology;
    r.details["right_matches_topology"] = right_matches_topology;
    r.details["class_order"] = order_name(cmp.order);
    r.details["oracle_confirmed"] = oracle_ran ? json(oracle_ok) : json(nullptr);

    // the coset-to-point view exists exactly when H is a point stabilizer
    int base_point = -1;
    for (int a = 0; a < ctx.sc.n; ++a)
        if (ctx.H == Subgroup::point_stabilizer(ctx.sc.n, a)) { base_point = a; break; }
    if (base_point >= 0) {
        CosetPointBijection phi(ctx.C, base_point);
        r.details["base_point"] = base_point;
        r.details["bijection_equivariant"] = bijection_equivariant(ctx.C, phi);
        r.details["right_min_on_points"] = partition_json(phi.transport(right.min_partition()));
        r.details["left_min_on_points"] = partition_json(phi.transport(left.min_partition()));
    } else {
        r.details["base_point"] = json(nullptr);
    }

    if (!banner.empty()) r.prose.push_back(banner);
    r.prose.push_back("left quotient uniformity min partition:  " + left.min_partition().to_string());
    r.prose.push_back("right quotient uniformity min partition: " + right.min_partition().to_string());
    r.prose.push_back(std::string("uniformities equal: ") + (uniformities_equal ? "yes" : "no"));
    r.prose.push_back(std::string("every left-uniformly-continuous function is right-uniformly-continuous: ") +
                      (left_uc_inside_right ? "yes" : "no"));
    r.prose.push_back(std::string("one-sided gap exhibited: ") + (gap ? "YES" : "no"));
    r.prose.push_back("quotient topology blocks: " + topology.to_string() +
                      (left_matches_topology ? " (matches the left route)" : " (MISMATCH with the left route)"));
    r.prose.push_back(std::string("right uniformity compatible with the quotient topology: ") +
                      (right_matches_topology ? "yes" : "no"));
    if (oracle_ran)
        r.prose.push_back(std::string("reference pipeline confirms both minimum partitions: ") +
                          (oracle_ok ? "yes" : "NO"));
    return r;
}

NamedResult run_one(const Ctx& ctx, const std::string& name) {
    if (name == "verify-losa") return run_losa(ctx);
    if (name == "verify-maile") return run_maile(ctx);
    if (name == "verify-va") return run_va(ctx);
    if (name == "verify-tolu") return run_tolu(ctx);
    if (name == "verify-pahulu") return run_pahulu(ctx);
    if (name == "quotient") return run_quotient(ctx);
    if (name == "uc-compare") return run_uc_compare(ctx);
    if (name == "itzkowitz-report") return run_report(ctx);
    throw ValidationError("unknown command '" + name + "'");
}

json scenario_echo(const Scenario& sc, const RunOptions& opts) {
    json fam;
    fam["mode"] = sc.family_mode == FamilyMode::FilterBase ? "filter-base" : "group-topology";
    json seeds = json::array();
    for (const Partition& p : sc.family_seeds) seeds.push_back(partition_json(p));
    fam["seeds"] = seeds;

    json sub;
    switch (sc.subgroup.kind) {
    case SubgroupSpec::Kind::PointStabilizer:
        sub["point_stabilizer"] = sc.subgroup.point;
        break;
    case SubgroupSpec::Kind::PartitionStabilizer:
        sub["partition_stabilizer"] = sc.subgroup.blocks;
        break;
    case SubgroupSpec::Kind::Elements:
        sub["elements"] = sc.subgroup.elements;
        break;
    }

    json echo;
    echo["n"] = sc.n;
    if (!sc.labels.empty()) echo["labels"] = sc.labels;
    echo["family"] = fam;
    echo["subgroup"] = sub;
    echo["seed"] = opts.seed;
    json caps;
    caps["symmetric_group"] = sc.caps.symmetric_group
        ? json(*sc.caps.symmetric_group) : json(nullptr);
    caps["family"] = sc.caps.family;
    caps["random_instances"] = sc.caps.random_instances;
    echo["caps"] = caps;
    return echo;
}

} // namespace

RunOutcome run(const Scenario& scenario, const std::string& command,
               const RunOptions& options) {
    if (options.format != "prose" && options.format != "canonical")
        throw ValidationError("format must be 'prose' or 'canonical'");

    std::vector<std::string> to_run;
    if (command == "all") {
        to_run = scenario.checks.empty() ? check_names() : scenario.checks;
    } else {
        const auto& known = check_names();
        if (std::find(known.begin(), known.end(), command) == known.end())
            throw ValidationError("unknown command '" + command + "'");
        to_run.push_back(command);
    }

    Ctx ctx = build_context(scenario, options);

    RunOutcome outcome;
    outcome.all_pass = true;
    std::vector<NamedResult> results;
    for (const std::string& name : to_run) {
        auto start = std::chrono::steady_clock::now();
        NamedResult r = run_one(ctx, name);
        auto stop = std::chrono::steady_clock::now();
        outcome.timings_ms.emplace_back(
            name, std::chrono::duration<double, std::milli>(stop - start).count());
        outcome.all_pass = outcome.all_pass && r.pass;
        results.push_back(std::move(r));
    }

    json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["scenario"] = scenario_echo(scenario, options);
    doc["pass"] = outcome.all_pass;
    json checks = json::array();
    for (const NamedResult& r : results) {
        json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["applicable"] = r.applicable;
        c["note"] = r.note;
        c["counterexample"] = r.counterexample;
        c["details"] = r.details;
        checks.push_back(c);
    }
    doc["checks"] = checks;
    outcome.canonical = doc.dump(2) + "\n";

    std::ostringstream prose;
    prose << "uniflab " << command << " (n = " << scenario.n << ", "
          << (scenario.family_mode == FamilyMode::FilterBase ? "filter-base" : "group-topology")
          << " family, " << ctx.family.size() << " member partitions, "
          << ctx.C.count() << " cosets)\n";
    for (const NamedResult& r : results) {
        prose << "\n[" << (r.pass ? "PASS" : "FAIL") << "] " << r.name;
        if (!r.applicable) prose << " (not applicable)";
        prose << "\n";
        for (const std::string& line : r.prose) prose << "  " << line << "\n";
        if (!r.counterexample.empty()) prose << "  counterexample: " << r.counterexample << "\n";
    }
    prose << "\noverall: " << (outcome.all_pass ? "PASS" : "FAIL") << "\n";
    outcome.prose = prose.str();
    return outcome;
}

} // namespace uniflab
