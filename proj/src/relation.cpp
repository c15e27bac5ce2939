#include "uniflab/relation.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>

namespace uniflab {

namespace {

void check_same_carrier(const Relation& a, const Relation& b, const char* op) {
    if (a.carrier() != b.carrier()) {
        std::ostringstream os;
        os << op << " needs relations on the same carrier ("
           << a.carrier() << " vs " << b.carrier() << ")";
        throw ValidationError(os.str());
    }
}

// Zero out the unused bits of the last word so whole-row word compares
// stay meaningful.
std::uint64_t tail_mask(int m) {
    int rem = m & 63;
    return rem ? ((std::uint64_t{1} << rem) - 1) : ~std::uint64_t{0};
}

} // namespace

Relation::Relation(int m) : m_(m), words_((m + 63) / 64) {
    if (m < 0) throw ValidationError("relation carrier must be nonnegative");
    bits_.assign(static_cast<std::size_t>(m_) * words_, 0);
}

Relation Relation::diagonal(int m) {
    Relation r(m);
    for (int i = 0; i < m; ++i) r.set(i, i);
    return r;
}

Relation Relation::complete(int m) {
    Relation r(m);
    std::uint64_t last = tail_mask(m);
    for (int i = 0; i < m; ++i) {
        std::uint64_t* row = r.row(i);
        for (int w = 0; w < r.words_; ++w) row[w] = ~std::uint64_t{0};
        if (r.words_ > 0) row[r.words_ - 1] = last;
    }
    return r;
}

Relation Relation::from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
    Relation r(m);
    for (auto [i, j] : pairs) {
        if (i < 0 || i >= m || j < 0 || j >= m)
            throw ValidationError("relation pair out of range");
        r.set(i, j);
    }
    return r;
}

std::size_t Relation::pair_count() const {
    std::size_t total = 0;
    for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool Relation::is_reflexive() const {
    for (int i = 0; i < m_; ++i)
        if (!get(i, i)) return false;
    return true;
}

bool Relation::is_symmetric() const {
    for (int i = 0; i < m_; ++i)
        for (int j = i + 1; j < m_; ++j)
            if (get(i, j) != get(j, i)) return false;
    return true;
}

bool Relation::is_transitive() const {
    Relation step = compose(*this, *this);
    return step.is_subset_of(*this);
}

bool Relation::is_equivalence() const {
    return is_reflexive() && is_symmetric() && is_transitive();
}

bool Relation::is_subset_of(const Relation& other) const {
    check_same_carrier(*this, other, "subset test");
    for (std::size_t w = 0; w < bits_.size(); ++w)
        if (bits_[w] & ~other.bits_[w]) return false;
    return true;
}

Relation unite(const Relation& a, const Relation& b) {
    check_same_carrier(a, b, "union");
    Relation out = a;
    for (int i = 0; i < out.carrier(); ++i) {
        std::uint64_t* dst = out.row(i);
        const std::uint64_t* src = b.row(i);
        for (int w = 0; w < out.words_per_row(); ++w) dst[w] |= src[w];
    }
    return out;
}

Relation intersect(const Relation& a, const Relation& b) {
    check_same_carrier(a, b, "intersection");
    Relation out = a;
    for (int i = 0; i < out.carrier(); ++i) {
        std::uint64_t* dst = out.row(i);
        const std::uint64_t* src = b.row(i);
        for (int w = 0; w < out.words_per_row(); ++w) dst[w] &= src[w];
    }
    return out;
}

Relation inverse(const Relation& r) {
    Relation out(r.carrier());
    for (int i = 0; i < r.carrier(); ++i) {
        const std::uint64_t* row = r.row(i);
        for (int w = 0; w < r.words_per_row(); ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                out.set(j, i);
            }
        }
    }
    return out;
}

Relation compose(const Relation& R, const Relation& S) {
    check_same_carrier(R, S, "composition");
    const int m = R.carrier();
    const int words = R.words_per_row();
    Relation out(m);
    // Row x of the result is the union of R's rows over the successors of
    // x in S. Rows are independent, which is the whole parallel story.
#pragma omp parallel for schedule(dynamic, 16)
    for (int x = 0; x < m; ++x) {
        const std::uint64_t* srow = S.row(x);
        std::uint64_t* orow = out.row(x);
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = srow[w];
            while (bits) {
                int y = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const std::uint64_t* rrow = R.row(y);
                for (int k = 0; k < words; ++k) orow[k] |= rrow[k];
            }
        }
    }
    return out;
}

Relation transitive_closure(Relation r) {
    for (;;) {
        Relation next = unite(r, compose(r, r));
        if (next == r) return r;
        r = std::move(next);
    }
}

Partition to_partition(const Relation& r) {
    if (!r.is_reflexive())
        throw ValidationError("relation is not reflexive, cannot read off blocks");
    if (!r.is_symmetric())
        throw ValidationError("relation is not symmetric, cannot read off blocks");
    // With reflexivity and symmetry in hand, transitivity is exactly
    // "related rows are identical".
    const int m = r.carrier();
    for (int i = 0; i < m; ++i) {
        const std::uint64_t* irow = r.row(i);
        for (int w = 0; w < r.words_per_row(); ++w) {
            std::uint64_t bits = irow[w];
            while (bits) {
                int j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (std::memcmp(irow, r.row(j), sizeof(std::uint64_t) * static_cast<std::size_t>(r.words_per_row())) != 0)
                    throw ValidationError("relation is not transitive, cannot read off blocks");
            }
        }
    }
    std::vector<int> ids(static_cast<std::size_t>(m), -1);
    int next_id = 0;
    for (int i = 0; i < m; ++i) {
        if (ids[static_cast<std::size_t>(i)] != -1) continue;
        const std::uint64_t* irow = r.row(i);
        for (int w = 0; w < r.words_per_row(); ++w) {
            std::uint64_t bits = irow[w];
            while (bits) {
                int j = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                ids[static_cast<std::size_t>(j)] = next_id;
            }
        }
        ++next_id;
    }
    return Partition::from_block_ids(m, ids);
}

Relation v_gamma(const Partition& gamma) {
    Relation r(gamma.carrier());
    for (const auto& block : gamma.blocks())
        for (int x : block)
            for (int y : block)
                r.set(x, y);
    return r;
}

BasisVerdict verify_uniformity_basis(const std::vector<Relation>& base) {
    BasisVerdict v;
    if (base.empty()) {
        v.detail = "empty base";
        return v;
    }
    const int m = base.front().carrier();
    for (const Relation& r : base)
        if (r.carrier() != m)
            throw ValidationError("basis members live on different carriers");

    v.reflexive_ok = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!base[i].is_reflexive()) {
            v.reflexive_ok = false;
            v.detail = "member " + std::to_string(i) + " is not reflexive";
            break;
        }
    }
    v.symmetric_ok = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!base[i].is_symmetric()) {
            v.symmetric_ok = false;
            if (v.detail.empty())
                v.detail = "member " + std::to_string(i) + " is not symmetric";
            break;
        }
    }
    v.intersection_ok = true;
    for (std::size_t i = 0; i < base.size() && v.intersection_ok; ++i) {
        for (std::size_t j = i + 1; j < base.size() && v.intersection_ok; ++j) {
            Relation cap = intersect(base[i], base[j]);
            bool found = false;
            for (const Relation& r : base)
                if (r.is_subset_of(cap)) { found = true; break; }
            if (!found) {
                v.intersection_ok = false;
                if (v.detail.empty())
                    v.detail = "no member inside the intersection of members " +
                               std::to_string(i) + " and " + std::to_string(j);
            }
        }
    }
    v.composition_ok = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
        bool found = false;
        for (const Relation& r : base) {
            if (compose(r, r).is_subset_of(base[i])) { found = true; break; }
        }
        if (!found) {
            v.composition_ok = false;
            if (v.detail.empty())
                v.detail = "no member composes into member " + std::to_string(i);
            break;
        }
    }
    return v;
}

FiniteUniformity::FiniteUniformity(Partition min_partition, std::string provenance)
    : min_(std::move(min_partition)), provenance_(std::move(provenance)) {}

bool FiniteUniformity::contains(const Relation& r) const {
    if (r.carrier() != carrier())
        throw ValidationError("entourage test needs the uniformity's carrier");
    return min_entourage().is_subset_of(r);
}

FiniteUniformity uniformity_from_base(const std::vector<Relation>& base,
                                      BaseMode mode,
                                      std::string provenance) {
    if (base.empty())
        throw ValidationError("cannot build a uniformity from an empty base");
    if (mode == BaseMode::Strict) {
        BasisVerdict v = verify_uniformity_basis(base);
        if (!v.all())
            throw ValidationError("base fails the uniformity axioms: " + v.detail);
    }
    Relation core = base.front();
    for (std::size_t i = 1; i < base.size(); ++i) core = intersect(core, base[i]);
    if (mode == BaseMode::FinestContaining) {
        // smallest equivalence relation containing every base member's
        // intersection: symmetrize, add the diagonal, close
        core = unite(core, inverse(core));
        core = unite(core, Relation::diagonal(core.carrier()));
        core = transitive_closure(std::move(core));
    }
    return FiniteUniformity(to_partition(core), std::move(provenance));
}

} // namespace uniflab
