#include "uniflab/uc.hpp"

#include <algorithm>
#include <sstream>

namespace uniflab {

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

CarrierFunction::CarrierFunction(std::vector<Rational> values)
    : values_(std::move(values)) {
    if (values_.empty())
        throw ValidationError("a carrier function needs a nonempty carrier");
}

Partition CarrierFunction::fibers() const {
    return fiber_partition(values_);
}

Rational CarrierFunction::min_gap() const {
    Rational best(0);
    bool found = false;
    for (std::size_t x = 0; x < values_.size(); ++x)
        for (std::size_t y = x + 1; y < values_.size(); ++y) {
            Rational d = values_[x] - values_[y];
            if (d < Rational(0)) d = -d;
            if (d == Rational(0)) continue;
            if (!found || d < best) { best = d; found = true; }
        }
    return found ? best : Rational(0);
}

CarrierFunction CarrierFunction::indicator(int m, const std::vector<int>& block) {
    std::vector<Rational> values(static_cast<std::size_t>(m), Rational(0));
    for (int x : block) {
        if (x < 0 || x >= m)
            throw ValidationError("indicator block index out of range");
        values[static_cast<std::size_t>(x)] = Rational(1);
    }
    return CarrierFunction(std::move(values));
}

bool is_uc(const CarrierFunction& f, const FiniteUniformity& U) {
    if (f.carrier() != U.carrier())
        throw ValidationError("function and uniformity carriers differ");
    // Uniform continuity against the up-set of one equivalence relation
    // collapses to constancy on its blocks: any nonzero variation inside
    // a block fails for eps below that variation.
    for (const auto& block : U.min_partition().blocks()) {
        const Rational& v = f(block.front());
        for (int x : block)
            if (!(f(x) == v)) return false;
    }
    return true;
}

CheckResult check_fiber_uniform_continuity(const CarrierFunction& f) {
    CheckResult res;
    Partition gamma = f.fibers();
    FiniteUniformity U(gamma, "fibers of the tested function");

    if (!is_uc(f, U)) {
        res.pass = false;
        res.counterexample = "function is not constant on its own fibers";
        return res;
    }
    // No abstraction in the second route: sweep the entourage directly
    // and compare values pointwise.
    Relation e = v_gamma(gamma);
    for (int x = 0; x < f.carrier(); ++x)
        for (int y = 0; y < f.carrier(); ++y)
            if (e.get(x, y) && !(f(x) == f(y))) {
                res.pass = false;
                std::ostringstream os;
                os << "fiber entourage relates " << x << " and " << y
                   << " with values " << to_string(f(x)) << " and " << to_string(f(y));
                res.counterexample = os.str();
                return res;
            }
    res.pass = true;
    std::ostringstream os;
    os << gamma.block_count() << " fibers on " << f.carrier() << " points";
    res.note = os.str();
    return res;
}

ClassComparison uc_class_compare(const FiniteUniformity& U1, const FiniteUniformity& U2) {
    if (U1.carrier() != U2.carrier())
        throw ValidationError("class comparison needs a common carrier");
    const Partition& p1 = U1.min_partition();
    const Partition& p2 = U2.min_partition();
    const int m = U1.carrier();

    // UC(U) is the set of functions constant on U's min blocks, so
    // UC(U1) inside UC(U2) holds iff p2 refines p1.
    bool first_in_second = refines(p2, p1);
    bool second_in_first = refines(p1, p2);

    ClassComparison cmp;
    if (first_in_second && second_in_first) cmp.order = ClassOrder::Equal;
    else if (first_in_second) cmp.order = ClassOrder::FirstInSecond;
    else if (second_in_first) cmp.order = ClassOrder::SecondInFirst;
    else cmp.order = ClassOrder::Incomparable;

    // A block of the coarser side split by the other side yields an
    // indicator separating the classes.
    auto witness_against = [m](const Partition& in, const Partition& out) {
        // constant on `in` blocks, split somewhere by `out`
        for (const auto& block : out.blocks()) {
            int home = in.block_of(block.front());
            for (int x : block)
                if (in.block_of(x) != home)
                    return CarrierFunction::indicator(m, in.blocks()[static_cast<std::size_t>(home)]);
        }
        throw Error("no witness exists, refinement holds");
    };
    if (!first_in_second) cmp.only_in_first.push_back(witness_against(p1, p2));
    if (!second_in_first) cmp.only_in_second.push_back(witness_against(p2, p1));

    cmp.witnesses_verified = true;
    for (const CarrierFunction& w : cmp.only_in_first)
        if (!is_uc(w, U1) || is_uc(w, U2)) cmp.witnesses_verified = false;
    for (const CarrierFunction& w : cmp.only_in_second)
        if (!is_uc(w, U2) || is_uc(w, U1)) cmp.witnesses_verified = false;
    return cmp;
}

} // namespace uniflab
