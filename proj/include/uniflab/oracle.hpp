#pragma once

#include <vector>

#include "uniflab/partition.hpp"
#include "uniflab/perm.hpp"
#include "uniflab/quotient.hpp"
#include "uniflab/relation.hpp"
#include "uniflab/uc.hpp"

// Serial reference implementations, written as literal transcriptions of
// the definitions with no shared shortcuts: stabilizers by filtering the
// full symmetric group, images by sweeping all of G x G, closure by
// single-step pair chasing, uniform continuity by trying every candidate
// threshold. They exist to disagree with the optimized paths when those
// are wrong, so they stay slow and blunt on purpose. Every function here
// throws CapError past its size cap instead of degrading.
namespace uniflab::oracle {

// Filters symmetric_group(n) by literal per-block image-set comparison,
// not via pushforward; cap n <= 6.
Subgroup naive_stabilizer(const Partition& gamma);

// Coset ids recomputed locally (least representative, ascending), then a
// full double loop over G x G testing the defining condition on each
// side; cap carrier <= 5.
Relation naive_image(Side side, const Subgroup& V, const Subgroup& G,
                     const Subgroup& H);

// Adds one pair at a time until nothing changes; cap carrier <= 200.
Relation naive_transitive_closure(const Relation& r);

// Literal uniform-continuity test of f against the filter base `base`:
// for every eps from the finite set of half-gaps of f, some member U of
// the up-set generated by `base` must keep |f(x) - f(y)| < eps on all of
// U. Since supersets only hurt, only the intersection of the base
// matters; cap carrier <= 12.
bool naive_uc(const CarrierFunction& f, const std::vector<Relation>& base);

} // namespace uniflab::oracle
