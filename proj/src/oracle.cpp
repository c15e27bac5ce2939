#include "uniflab/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace uniflab::oracle {

namespace {

void cap_or_throw(bool ok, const char* what, long long have, long long cap) {
    if (ok) return;
    std::ostringstream os;
    os << "oracle " << what << ": size " << have << " exceeds cap " << cap;
    throw CapError(os.str());
}

} // namespace

Subgroup naive_stabilizer(const Partition& gamma) {
    cap_or_throw(gamma.carrier() <= 6, "naive_stabilizer", gamma.carrier(), 6);
    std::vector<Perm> kept;
    Subgroup full = Subgroup::symmetric_group(gamma.carrier());
    for (const Perm& g : full.elements()) {
        bool stabilizes = true;
        for (const auto& block : gamma.blocks()) {
            std::vector<int> image;
            image.reserve(block.size());
            for (int x : block) image.push_back(g(x));
            std::sort(image.begin(), image.end());
            if (image != block) { stabilizes = false; break; }
        }
        if (stabilizes) kept.push_back(g);
    }
    return Subgroup::from_elements(gamma.carrier(), std::move(kept));
}

Relation naive_image(Side side, const Subgroup& V, const Subgroup& G,
                     const Subgroup& H) {
    cap_or_throw(G.carrier() <= 5, "naive_image", G.carrier(), 5);
    for (const Perm& v : V.elements())
        if (!G.contains(v)) throw ValidationError("oracle naive_image: V escapes G");
    for (const Perm& h : H.elements())
        if (!G.contains(h)) throw ValidationError("oracle naive_image: H escapes G");

    // local coset ids: each element tagged by the least key in its coset,
    // ids assigned by ascending tag
    const auto& elems = G.elements();
    std::vector<std::uint64_t> tag(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        std::uint64_t best = ~std::uint64_t{0};
        for (const Perm& h : H.elements())
            best = std::min(best, compose(elems[i], h).key());
        tag[i] = best;
    }
    std::vector<std::uint64_t> sorted_tags = tag;
    std::sort(sorted_tags.begin(), sorted_tags.end());
    sorted_tags.erase(std::unique(sorted_tags.begin(), sorted_tags.end()),
                      sorted_tags.end());
    auto id_of = [&](std::size_t i) {
        return static_cast<int>(std::lower_bound(sorted_tags.begin(), sorted_tags.end(),
                                                 tag[i]) - sorted_tags.begin());
    };

    Relation r(static_cast<int>(sorted_tags.size()));
    for (std::size_t fi = 0; fi < elems.size(); ++fi) {
        for (std::size_t gi = 0; gi < elems.size(); ++gi) {
            bool related = side == Side::Left
                               ? V.contains(compose(inverse(elems[fi]), elems[gi]))
                               : V.contains(compose(elems[fi], inverse(elems[gi])));
            if (related) r.set(id_of(fi), id_of(gi));
        }
    }
    return r;
}

Relation naive_transitive_closure(const Relation& r) {
    cap_or_throw(r.carrier() <= 200, "naive_transitive_closure", r.carrier(), 200);
    Relation out = r;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < out.carrier(); ++x)
            for (int y = 0; y < out.carrier(); ++y) {
                if (!out.get(x, y)) continue;
                for (int z = 0; z < out.carrier(); ++z)
                    if (out.get(y, z) && !out.get(x, z)) {
                        out.set(x, z);
                        changed = true;
                    }
            }
    }
    return out;
}

bool naive_uc(const CarrierFunction& f, const std::vector<Relation>& base) {
    cap_or_throw(f.carrier() <= 12, "naive_uc carrier", f.carrier(), 12);
    cap_or_throw(base.size() <= 10, "naive_uc base size",
                 static_cast<long long>(base.size()), 10);
    if (base.empty())
        throw ValidationError("oracle naive_uc: empty base");
    for (const Relation& r : base)
        if (r.carrier() != f.carrier())
            throw ValidationError("oracle naive_uc: base carrier mismatch");

    // thresholds that can possibly bind: half of every distinct gap
    std::vector<Rational> gaps;
    for (int x = 0; x < f.carrier(); ++x)
        for (int y = x + 1; y < f.carrier(); ++y) {
            Rational d = f(x) - f(y);
            if (d < Rational(0)) d = -d;
            if (d != Rational(0)) gaps.push_back(d / 2);
        }
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

    // the filter generated by the base is every superset of every
    // intersection of members; supersets never help, so try each
    // nonempty intersection
    const std::size_t k = base.size();
    for (const Rational& eps : gaps) {
        bool some_entourage_works = false;
        for (std::size_t mask = 1; mask < (std::size_t{1} << k) && !some_entourage_works; ++mask) {
            Relation u = Relation::complete(f.carrier());
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (std::size_t{1} << b)) u = intersect(u, base[b]);
            bool ok = true;
            for (int x = 0; x < f.carrier() && ok; ++x)
                for (int y = 0; y < f.carrier(); ++y) {
                    if (!u.get(x, y)) continue;
                    Rational d = f(x) - f(y);
                    if (d < Rational(0)) d = -d;
                    if (!(d < eps)) { ok = false; break; }
                }
            some_entourage_works = ok;
        }
        if (!some_entourage_works) return false;
    }
    return true;
}

} // namespace uniflab::oracle
