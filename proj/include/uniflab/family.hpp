#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniflab/partition.hpp"
#include "uniflab/perm.hpp"

namespace uniflab {

enum class FamilyMode {
    // Closed under pairwise meet only: the seeds generate a filter base
    // of partition stabilizers, not necessarily a full group topology.
    FilterBase,
    // Closed under pairwise meet and under pushforward along every
    // permutation of the carrier (equivalently along all transpositions).
    GroupTopology,
};

// A finite family of partitions of a common carrier, kept deduplicated
// and sorted. With the mode recorded, it describes the neighborhood
// family { St_gamma : gamma in members } at the identity.
class PartitionFamily {
public:
    PartitionFamily(int n, std::vector<Partition> members, FamilyMode mode);

    int carrier() const { return n_; }
    FamilyMode mode() const { return mode_; }
    const std::vector<Partition>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(const Partition& gamma) const;

    // Meet of all members; its stabilizer is the smallest neighborhood.
    const Partition& overall_meet() const { return meet_; }

private:
    int n_;
    FamilyMode mode_;
    std::vector<Partition> members_;
    Partition meet_;
};

// Worklist closure of the seeds under the operations of the mode.
// Throws CapError when the family would exceed cap members (the carrier
// has at most Bell(n) partitions, so the cap only bites on bad input).
PartitionFamily close_family(int n, const std::vector<Partition>& seeds,
                             FamilyMode mode, std::size_t cap = 10000);

// St_{meet(a, b)} == St_a intersect St_b, checked explicitly.
bool stabilizer_meet_identity(const Partition& a, const Partition& b);

// How the four neighborhood-filter axioms for a group topology at the
// identity fare on { St_gamma : gamma in family }:
//   (i)   every member contains the identity
//   (ii)  for every g and gamma there is beta with
//         conjugate(g^-1, St_beta) contained in St_gamma
//   (iii) for every gamma there is beta with St_beta * St_beta
//         contained in St_gamma (stabilizers are idempotent, so beta =
//         gamma works; verified rather than assumed)
//   (iv)  separation: for g != identity some member excludes g
// Axiom (ii) is quantified over transpositions by default, which
// suffices because conjugation by a product factors through the family;
// full_quantification sweeps every g in S_n instead.
struct AxiomReport {
    bool identity_ok = false;
    bool conjugation_ok = false;
    bool composition_ok = false;
    bool separation_ok = false;
    std::string conjugation_witness;   // failing g and gamma, when any
    std::string separation_witness;    // failing g, when any

    bool all() const {
        return identity_ok && conjugation_ok && composition_ok && separation_ok;
    }
};

AxiomReport topology_axiom_report(const PartitionFamily& family,
                                  const Subgroup& G,
                                  bool full_quantification = false);

// A partition gamma with f not in St_gamma, for f != identity: isolate
// one moved point and its image. Postcondition is checked before return.
Partition separation_witness(const Perm& f);

// The partition whose stabilizer is the pointwise stabilizer of M:
// singleton blocks for the members of M, one block for the rest.
Partition pointwise_basis(int n, const std::vector<int>& M);

// St_{overall_meet}: the smallest stabilizer the family induces.
Subgroup minimum_subgroup(const PartitionFamily& family);

} // namespace uniflab
