#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "uniflab/partition.hpp"
#include "uniflab/quotient.hpp"
#include "uniflab/relation.hpp"

namespace uniflab {

// Exact rational scalar used for function values and gaps. Carriers are
// tiny, so values stay far away from overflow in practice.
using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);   // "3/2", "-1", "0"

// A function from {0, ..., m-1} to the rationals.
class CarrierFunction {
public:
    explicit CarrierFunction(std::vector<Rational> values);

    int carrier() const { return static_cast<int>(values_.size()); }
    const Rational& operator()(int x) const { return values_[x]; }
    const std::vector<Rational>& values() const { return values_; }

    // Partition of the carrier into fibers (level sets).
    Partition fibers() const;
    // Smallest nonzero |f(x) - f(y)|; zero for constant functions.
    Rational min_gap() const;

    // Indicator of one block: 1 on the block, 0 elsewhere.
    static CarrierFunction indicator(int m, const std::vector<int>& block);

private:
    std::vector<Rational> values_;
};

// f is uniformly continuous from U to the standard uniformity on the
// rationals iff f is constant on every block of U's smallest entourage.
// (For any eps the entourage requirement forces |f(x) - f(y)| < eps on
// related pairs; finitely many values make that equivalent to equality.)
bool is_uc(const CarrierFunction& f, const FiniteUniformity& U);

// Every function on a finite uniform carrier is uniformly continuous for
// the uniformity generated by its own fibers; builds that uniformity,
// confirms is_uc, and cross-checks the blocks against the fibers.
CheckResult check_fiber_uniform_continuity(const CarrierFunction& f);

// How the classes UC(U1) and UC(U2) of uniformly continuous rational
// functions compare. Since UC(U) is exactly the set of functions
// constant on min_partition(U) blocks, the comparison reduces to
// refinement between the two partitions; each strict side is backed by a
// verified witness function (a block indicator in one class, not the
// other).
enum class ClassOrder { Equal, FirstInSecond, SecondInFirst, Incomparable };

struct ClassComparison {
    ClassOrder order = ClassOrder::Equal;
    // Functions in UC(U1) but not UC(U2), nonempty whenever the first
    // class is not contained in the second; mirrored for the other side.
    std::vector<CarrierFunction> only_in_first;
    std::vector<CarrierFunction> only_in_second;
    bool witnesses_verified = false;
};

ClassComparison uc_class_compare(const FiniteUniformity& U1, const FiniteUniformity& U2);

} // namespace uniflab
