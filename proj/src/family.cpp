#include "uniflab/family.hpp"

#include <algorithm>
#include <sstream>

namespace uniflab {

namespace {

Partition family_meet(int n, const std::vector<Partition>& members) {
    Partition acc = Partition::top(n);
    for (const Partition& p : members) acc = meet(acc, p);
    return acc;
}

} // namespace

PartitionFamily::PartitionFamily(int n, std::vector<Partition> members, FamilyMode mode)
    : n_(n), mode_(mode), members_(std::move(members)),
      meet_(family_meet(n, members_)) {
    if (members_.empty())
        throw ValidationError("a partition family needs at least one member");
    for (const Partition& p : members_)
        if (p.carrier() != n_)
            throw ValidationError("family members live on different carriers");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool PartitionFamily::contains(const Partition& gamma) const {
    return std::binary_search(members_.begin(), members_.end(), gamma);
}

PartitionFamily close_family(int n, const std::vector<Partition>& seeds,
                             FamilyMode mode, std::size_t cap) {
    if (seeds.empty())
        throw ValidationError("family closure needs at least one seed");
    std::vector<Partition> members = seeds;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    std::vector<Perm> transpositions;
    if (mode == FamilyMode::GroupTopology)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                transpositions.push_back(Perm::transposition(n, a, b));

    auto contains = [&](const Partition& p) {
        return std::binary_search(members.begin(), members.end(), p);
    };
    auto insert = [&](Partition p) {
        auto it = std::lower_bound(members.begin(), members.end(), p);
        if (it != members.end() && *it == p) return false;
        members.insert(it, std::move(p));
        if (members.size() > cap) {
            std::ostringstream os;
            os << "family closure exceeds cap " << cap;
            throw CapError(os.str());
        }
        return true;
    };

    // worklist to a fixed point; every pass rescans, the carrier is tiny
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<Partition> snapshot = members;
        for (std::size_t i = 0; i < snapshot.size(); ++i) {
            for (std::size_t j = i; j < snapshot.size(); ++j) {
                Partition m = meet(snapshot[i], snapshot[j]);
                if (!contains(m)) grew |= insert(std::move(m));
            }
        }
        if (mode == FamilyMode::GroupTopology) {
            for (const Partition& p : snapshot) {
                for (const Perm& t : transpositions) {
                    Partition moved = pushforward(t, p);
                    if (!contains(moved)) grew |= insert(std::move(moved));
                }
            }
        }
    }
    return PartitionFamily(n, std::move(members), mode);
}

bool stabilizer_meet_identity(const Partition& a, const Partition& b) {
    Subgroup lhs = Subgroup::stabilizer_of_partition(meet(a, b));
    Subgroup rhs = intersect(Subgroup::stabilizer_of_partition(a),
                             Subgroup::stabilizer_of_partition(b));
    return lhs == rhs;
}

AxiomReport topology_axiom_report(const PartitionFamily& family,
                                  const Subgroup& G,
                                  bool full_quantification) {
    if (G.carrier() != family.carrier())
        throw ValidationError("axiom report needs the family's carrier");
    const int n = family.carrier();
    AxiomReport report;

    // (i) every stabilizer contains the identity
    report.identity_ok = true;
    Perm id = Perm::identity(n);
    for (const Partition& gamma : family.members()) {
        if (!Subgroup::stabilizer_of_partition(gamma).contains(id)) {
            report.identity_ok = false;
            break;
        }
    }

    // (ii) conjugation: for every g and gamma, some member beta satisfies
    // g^-1 St_beta g inside St_gamma. Conjugating by a product factors
    // through single moves, so quantifying over transpositions decides
    // the axiom; full_quantification sweeps all of G instead.
    std::vector<Perm> movers;
    if (full_quantification) {
        movers = G.elements();
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                movers.push_back(Perm::transposition(n, a, b));
    }
    report.conjugation_ok = true;
    for (const Perm& g : movers) {
        Perm gi = inverse(g);
        for (const Partition& gamma : family.members()) {
            Subgroup target = Subgroup::stabilizer_of_partition(gamma);
            bool found = false;
            for (const Partition& beta : family.members()) {
                Subgroup moved = conjugate(gi, Subgroup::stabilizer_of_partition(beta));
                if (moved.set().is_subset_of(target.set())) { found = true; break; }
            }
            if (!found) {
                report.conjugation_ok = false;
                report.conjugation_witness =
                    "g = " + to_cycles(g) + ", gamma = " + gamma.to_string();
                break;
            }
        }
        if (!report.conjugation_ok) break;
    }

    // (iii) composition: stabilizers are idempotent, so beta = gamma must
    // always work; verify by multiplying the set with itself.
    report.composition_ok = true;
    for (const Partition& gamma : family.members()) {
        Subgroup st = Subgroup::stabilizer_of_partition(gamma);
        bool found = false;
        for (const Partition& beta : family.members()) {
            PermSet bsq = product_set(Subgroup::stabilizer_of_partition(beta).set(),
                                      Subgroup::stabilizer_of_partition(beta).set());
            if (bsq.is_subset_of(st.set())) { found = true; break; }
        }
        if (!found) {
            report.composition_ok = false;
            break;
        }
    }

    // (iv) separation: every g != identity is excluded by some member
    report.separation_ok = true;
    for (const Perm& g : G.elements()) {
        if (g.is_identity()) continue;
        bool excluded = false;
        for (const Partition& gamma : family.members()) {
            if (!Subgroup::stabilizer_of_partition(gamma).contains(g)) {
                excluded = true;
                break;
            }
        }
        if (!excluded) {
            report.separation_ok = false;
            report.separation_witness = "g = " + to_cycles(g);
            break;
        }
    }
    return report;
}

Partition separation_witness(const Perm& f) {
    if (f.is_identity())
        throw ValidationError("separation witness needs a non-identity permutation");
    const int n = f.size();
    int x = 0;
    while (f(x) == x) ++x;
    std::vector<std::vector<int>> blocks{{x}, {f(x)}};
    std::vector<int> rest;
    for (int y = 0; y < n; ++y)
        if (y != x && y != f(x)) rest.push_back(y);
    if (!rest.empty()) blocks.push_back(std::move(rest));
    Partition gamma = Partition::from_blocks(n, blocks);
    if (Subgroup::stabilizer_of_partition(gamma).contains(f))
        throw Error("separation witness failed its postcondition");
    return gamma;
}

Partition pointwise_basis(int n, const std::vector<int>& M) {
    std::vector<bool> in_m(static_cast<std::size_t>(n), false);
    for (int x : M) {
        if (x < 0 || x >= n)
            throw ValidationError("pointwise basis point out of range");
        in_m[static_cast<std::size_t>(x)] = true;
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> rest;
    for (int x = 0; x < n; ++x) {
        if (in_m[static_cast<std::size_t>(x)]) blocks.push_back({x});
        else rest.push_back(x);
    }
    if (!rest.empty()) blocks.push_back(std::move(rest));
    return Partition::from_blocks(n, blocks);
}

Subgroup minimum_subgroup(const PartitionFamily& family) {
    return Subgroup::stabilizer_of_partition(family.overall_meet());
}

} // namespace uniflab
