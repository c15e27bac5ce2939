#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "uniflab/errors.hpp"

namespace uniflab {

class Perm;

// A partition of {0, ..., n-1} kept in canonical form: every block is
// sorted ascending and blocks are ordered by their least element. Two
// Partition values are equal iff they are the same set partition.
class Partition {
public:
    // Validates that the blocks are nonempty, disjoint and cover the
    // carrier, then canonicalizes. Throws ValidationError otherwise.
    static Partition from_blocks(int n, const std::vector<std::vector<int>>& raw);
    // Points i, j share a block iff id_of_point[i] == id_of_point[j].
    static Partition from_block_ids(int n, const std::vector<int>& id_of_point);
    static Partition singletons(int n);
    static Partition top(int n);   // one block

    int carrier() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    int block_of(int x) const;
    bool same_block(int x, int y) const;
    bool is_singletons() const { return blocks_.size() == static_cast<std::size_t>(n_); }
    bool is_top() const { return blocks_.size() == 1; }

    std::string to_string() const;   // "{0 1}{2 3}"

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
    Partition(int n, std::vector<std::vector<int>> blocks);
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

// Coarsest common refinement: x and y share a meet block iff they share
// a block in both arguments.
Partition meet(const Partition& a, const Partition& b);

// True when every block of gamma is contained in a block of beta.
bool refines(const Partition& gamma, const Partition& beta);

// Blocks mapped forward through g: { g(B) : B block of gamma }.
Partition pushforward(const Perm& g, const Partition& gamma);
// Blocks pulled back: { g^-1(B) : B block of gamma }.
Partition pullback(const Perm& g, const Partition& gamma);

// Indices grouped by equal value: i and j share a block iff
// values[i] == values[j].
template <class T>
Partition fiber_partition(const std::vector<T>& values) {
    std::vector<std::vector<int>> blocks;
    std::vector<const T*> reps;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        std::size_t slot = reps.size();
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (*reps[k] == values[i]) { slot = k; break; }
        }
        if (slot == reps.size()) {
            reps.push_back(&values[i]);
            blocks.emplace_back();
        }
        blocks[slot].push_back(i);
    }
    return Partition::from_blocks(static_cast<int>(values.size()), blocks);
}

// Every partition of {0..n-1} in restricted-growth order; Bell(n) entries.
// Guarded by a cap because Bell grows fast (Bell(8) = 4140).
std::vector<Partition> all_partitions(int n, int cap = 8);

} // namespace uniflab
