#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uniflab/errors.hpp"

namespace uniflab {

class Partition;

// A permutation of {0, ..., n-1} stored inline, n <= 8.
//
// img(i) is the image of point i. The packed key orders permutations
// lexicographically by their image tuple, which is the order used for
// sorted element sets and coset representatives throughout.
class Perm {
public:
    static constexpr int max_points = 8;

    Perm() : n_(0) { img_.fill(0); }

    static Perm identity(int n);
    static Perm from_images(const std::vector<int>& images);
    // The transposition (a b) on n points; a == b gives the identity.
    static Perm transposition(int n, int a, int b);

    int size() const { return n_; }
    int operator()(int x) const;
    bool is_identity() const;

    // Images packed into one integer, most significant byte first, so that
    // numeric order on keys equals lexicographic order on image tuples.
    std::uint64_t key() const;

    friend bool operator==(const Perm& a, const Perm& b) = default;
    friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.key() <=> b.key();
    }

private:
    std::int8_t n_;
    std::array<std::uint8_t, max_points> img_;
};

// compose(f, g) applies g first: apply(compose(f, g), x) == f(g(x)).
Perm compose(const Perm& f, const Perm& g);
Perm inverse(const Perm& f);
inline int apply(const Perm& f, int x) { return f(x); }

// Copy of f with a sent to c and the displaced value patched back in:
// the result g satisfies g(a) == c, g(inverse(f)(c)) == f(a), and agrees
// with f everywhere else. When f(a) == c this is just f.
Perm redirect_image(const Perm& f, int a, int c);

std::string to_one_line(const Perm& f);   // "1,0,2,3"
std::string to_cycles(const Perm& f);     // "(0 1)", identity is "()"

// Accepts one-line notation ("1,0,2,3") or cycle notation ("(0 1)(2 3)",
// "()" for the identity). Cycles compose right to left.
Perm parse_perm(int n, const std::string& text);

// A deduplicated set of permutations on a common carrier, sorted by key.
class PermSet {
public:
    PermSet(int n, std::vector<Perm> elements);

    int carrier() const { return n_; }
    std::size_t size() const { return elems_.size(); }
    const std::vector<Perm>& elements() const { return elems_; }
    const Perm& at(std::size_t i) const { return elems_[i]; }

    bool contains(const Perm& p) const;
    // Position of p in key order, or npos.
    std::size_t index_of(const Perm& p) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool is_subset_of(const PermSet& other) const;
    friend bool operator==(const PermSet& a, const PermSet& b) = default;

private:
    int n_;
    std::vector<Perm> elems_;
    std::vector<std::uint64_t> keys_;
};

// { v * w : v in a, w in b }, as a plain set. Not a subgroup in general.
PermSet product_set(const PermSet& a, const PermSet& b);

// A subgroup of S_n given by its explicit element set.
class Subgroup {
public:
    // Throws CapError when n exceeds cap.
    static Subgroup symmetric_group(int n, int cap = default_symmetric_cap);
    static constexpr int default_symmetric_cap = 7;

    static Subgroup trivial(int n);
    // Audits the element set and throws ValidationError when it is not a
    // subgroup (missing identity, not closed under composition or inverse).
    static Subgroup from_elements(int n, std::vector<Perm> elements);
    // Worklist closure of the generated subgroup; CapError past cap elements.
    static Subgroup generated_by(int n, const std::vector<Perm>& gens,
                                 std::size_t cap = 10000);

    // All g with pushforward(g, gamma) == gamma, built blockwise as the
    // direct product of the per-block symmetric groups.
    static Subgroup stabilizer_of_partition(const Partition& gamma);
    // All g with g(a) == a, built by enumerating the remaining points.
    // Deliberately a separate construction from stabilizer_of_partition.
    static Subgroup point_stabilizer(int n, int a);

    int carrier() const { return set_.carrier(); }
    std::size_t size() const { return set_.size(); }
    const PermSet& set() const { return set_; }
    const std::vector<Perm>& elements() const { return set_.elements(); }
    bool contains(const Perm& p) const { return set_.contains(p); }

    // Identity present, closed under composition and inverse. On failure
    // writes one human-readable reason to *why when why is non-null.
    bool closure_audit(std::string* why = nullptr) const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) = default;

private:
    explicit Subgroup(PermSet set) : set_(std::move(set)) {}
    // Both produce genuine subgroups by construction and skip the audit.
    friend Subgroup conjugate(const Perm& g, const Subgroup& V);
    friend Subgroup intersect(const Subgroup& a, const Subgroup& b);
    PermSet set_;
};

// { g v g^-1 : v in V }.
Subgroup conjugate(const Perm& g, const Subgroup& V);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

} // namespace uniflab
