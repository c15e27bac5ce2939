#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uniflab/partition.hpp"

namespace uniflab {

// Binary relation on {0, ..., m-1}, stored as one bitset row per element.
// Row i holds the set { j : (i, j) in R }. The row layout is what the
// composition and closure kernels parallelize over.
class Relation {
public:
    explicit Relation(int m);
    static Relation diagonal(int m);
    static Relation complete(int m);
    static Relation from_pairs(int m, const std::vector<std::pair<int, int>>& pairs);

    int carrier() const { return m_; }
    int words_per_row() const { return words_; }
    const std::uint64_t* row(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }
    std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

    bool get(int i, int j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }
    void set(int i, int j) {
        row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
    }

    std::size_t pair_count() const;
    bool is_reflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;
    bool is_equivalence() const;
    bool is_subset_of(const Relation& other) const;

    friend bool operator==(const Relation& a, const Relation& b) = default;

private:
    int m_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

Relation unite(const Relation& a, const Relation& b);
Relation intersect(const Relation& a, const Relation& b);
// { (y, x) : (x, y) in r }.
Relation inverse(const Relation& r);

// compose(R, S) = { (x, z) : exists y with (x, y) in S and (y, z) in R },
// matching the convention for compose on Perm (S first, then R).
Relation compose(const Relation& R, const Relation& S);

// Least transitive superset, by squaring until a fixed point. Rows are
// processed in parallel; the result is independent of scheduling.
Relation transitive_closure(Relation r);

// The blocks of an equivalence relation. Throws ValidationError with a
// distinct message for each failed property (reflexive, symmetric,
// transitive).
Partition to_partition(const Relation& r);

// The union of B x B over the blocks of gamma: (x, y) present iff x and y
// share a block.
Relation v_gamma(const Partition& gamma);

// Axiom checks for a filter base of candidate entourages on one carrier:
// every member reflexive, every member symmetric (the symmetric-kernel
// axiom collapses to this for relations closed under inversion), every
// pair containing a member of the base in its intersection, and every
// member containing the composite of some member with itself.
struct BasisVerdict {
    bool reflexive_ok = false;
    bool symmetric_ok = false;
    bool intersection_ok = false;
    bool composition_ok = false;
    std::string detail;   // first failure, empty when all pass

    bool all() const {
        return reflexive_ok && symmetric_ok && intersection_ok && composition_ok;
    }
};

BasisVerdict verify_uniformity_basis(const std::vector<Relation>& base);

// A uniformity on a finite carrier. Finitely many entourages closed under
// supersets always reduce to the up-set of a single smallest entourage,
// and the uniformity axioms force that entourage to be an equivalence
// relation, so the whole structure is represented by one partition.
class FiniteUniformity {
public:
    FiniteUniformity(Partition min_partition, std::string provenance);

    int carrier() const { return min_.carrier(); }
    const Partition& min_partition() const { return min_; }
    const std::string& provenance() const { return provenance_; }

    Relation min_entourage() const { return v_gamma(min_); }
    // Entourage test: r belongs to the uniformity iff it contains the
    // smallest entourage.
    bool contains(const Relation& r) const;

    bool is_discrete() const { return min_.is_singletons(); }
    bool is_indiscrete() const { return min_.is_top(); }

    // Provenance is documentation, equality is structural.
    friend bool operator==(const FiniteUniformity& a, const FiniteUniformity& b) {
        return a.min_ == b.min_;
    }

private:
    Partition min_;
    std::string provenance_;
};

enum class BaseMode {
    // Require the base to satisfy all four axioms, then take the up-set
    // of the intersection of its members. Throws ValidationError (with
    // the BasisVerdict detail) when an axiom fails.
    Strict,
    // Take the equivalence closure of the intersection of the members:
    // the smallest uniformity in which every base member is an entourage.
    FinestContaining,
};

FiniteUniformity uniformity_from_base(const std::vector<Relation>& base,
                                      BaseMode mode,
                                      std::string provenance);

} // namespace uniflab
