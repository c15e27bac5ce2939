#include "uniflab/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "uniflab/partition.hpp"

namespace uniflab {

namespace {

void check_carrier(int n) {
    if (n < 1 || n > Perm::max_points) {
        std::ostringstream os;
        os << "permutation carrier " << n << " outside [1, " << Perm::max_points << "]";
        throw ValidationError(os.str());
    }
}

} // namespace

Perm Perm::identity(int n) {
    check_carrier(n);
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    return from_images(img);
}

Perm Perm::from_images(const std::vector<int>& images) {
    check_carrier(static_cast<int>(images.size()));
    Perm p;
    p.n_ = static_cast<std::int8_t>(images.size());
    std::array<bool, max_points> hit{};
    for (std::size_t i = 0; i < images.size(); ++i) {
        int v = images[i];
        if (v < 0 || v >= p.n_ || hit[static_cast<std::size_t>(v)]) {
            std::ostringstream os;
            os << "image list is not a permutation of 0.." << (p.n_ - 1);
            throw ValidationError(os.str());
        }
        hit[static_cast<std::size_t>(v)] = true;
        p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
}

Perm Perm::transposition(int n, int a, int b) {
    Perm p = identity(n);
    if (a < 0 || a >= n || b < 0 || b >= n)
        throw ValidationError("transposition points out of range");
    std::swap(p.img_[static_cast<std::size_t>(a)], p.img_[static_cast<std::size_t>(b)]);
    return p;
}

int Perm::operator()(int x) const {
    if (x < 0 || x >= n_) throw ValidationError("permutation applied outside its carrier");
    return img_[static_cast<std::size_t>(x)];
}

bool Perm::is_identity() const {
    for (int i = 0; i < n_; ++i)
        if (img_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

std::uint64_t Perm::key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < n_; ++i) k = (k << 8) | img_[static_cast<std::size_t>(i)];
    return k;
}

Perm compose(const Perm& f, const Perm& g) {
    if (f.size() != g.size())
        throw ValidationError("compose needs permutations of the same carrier");
    std::vector<int> img(static_cast<std::size_t>(f.size()));
    for (int x = 0; x < f.size(); ++x) img[static_cast<std::size_t>(x)] = f(g(x));
    return Perm::from_images(img);
}

Perm inverse(const Perm& f) {
    std::vector<int> img(static_cast<std::size_t>(f.size()));
    for (int x = 0; x < f.size(); ++x) img[static_cast<std::size_t>(f(x))] = x;
    return Perm::from_images(img);
}

Perm redirect_image(const Perm& f, int a, int c) {
    if (a < 0 || a >= f.size() || c < 0 || c >= f.size())
        throw ValidationError("redirect_image points out of range");
    int b = f(a);
    int d = apply(inverse(f), c);
    std::vector<int> img(static_cast<std::size_t>(f.size()));
    for (int x = 0; x < f.size(); ++x) img[static_cast<std::size_t>(x)] = f(x);
    img[static_cast<std::size_t>(a)] = c;
    img[static_cast<std::size_t>(d)] = b;
    return Perm::from_images(img);
}

std::string to_one_line(const Perm& f) {
    std::ostringstream os;
    for (int i = 0; i < f.size(); ++i) {
        if (i) os << ',';
        os << f(i);
    }
    return os.str();
}

std::string to_cycles(const Perm& f) {
    std::ostringstream os;
    std::vector<bool> done(static_cast<std::size_t>(f.size()), false);
    bool any = false;
    for (int start = 0; start < f.size(); ++start) {
        if (done[static_cast<std::size_t>(start)] || f(start) == start) continue;
        any = true;
        os << '(';
        int x = start;
        bool first = true;
        do {
            if (!first) os << ' ';
            os << x;
            first = false;
            done[static_cast<std::size_t>(x)] = true;
            x = f(x);
        } while (x != start);
        os << ')';
    }
    return any ? os.str() : "()";
}

namespace {

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') { ++i; continue; }
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::ostringstream os;
            os << "unexpected character '" << text[i] << "' in " << what;
            throw ValidationError(os.str());
        }
        int v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            v = v * 10 + (text[i++] - '0');
        out.push_back(v);
    }
    return out;
}

Perm cycle_to_perm(int n, const std::vector<int>& cycle) {
    Perm p = Perm::identity(n);
    if (cycle.size() < 2) return p;
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        int from = cycle[k];
        int to = cycle[(k + 1) % cycle.size()];
        if (from < 0 || from >= n)
            throw ValidationError("cycle entry out of range");
        img[static_cast<std::size_t>(from)] = to;
    }
    return Perm::from_images(img);
}

} // namespace

Perm parse_perm(int n, const std::string& text) {
    check_carrier(n);
    std::size_t first = text.find_first_not_of(" \t");
    if (first == std::string::npos)
        throw ValidationError("empty permutation text");
    if (text[first] != '(') {
        std::vector<int> img = parse_int_list(text, "one-line permutation");
        if (static_cast<int>(img.size()) != n) {
            std::ostringstream os;
            os << "one-line permutation has " << img.size()
               << " entries, carrier is " << n;
            throw ValidationError(os.str());
        }
        return Perm::from_images(img);
    }
    // cycle notation, rightmost cycle applies first
    std::vector<std::vector<int>> cycles;
    std::size_t i = first;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] != '(') throw ValidationError("expected '(' in cycle notation");
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) throw ValidationError("unbalanced '(' in cycle notation");
        cycles.push_back(parse_int_list(text.substr(i + 1, close - i - 1), "cycle"));
        i = close + 1;
    }
    Perm p = Perm::identity(n);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it)
        p = compose(cycle_to_perm(n, *it), p);
    return p;
}

PermSet::PermSet(int n, std::vector<Perm> elements) : n_(n), elems_(std::move(elements)) {
    check_carrier(n);
    for (const Perm& p : elems_)
        if (p.size() != n_)
            throw ValidationError("permutation set mixes carrier sizes");
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    keys_.reserve(elems_.size());
    for (const Perm& p : elems_) keys_.push_back(p.key());
}

std::size_t PermSet::index_of(const Perm& p) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), p.key());
    if (it == keys_.end() || *it != p.key()) return npos;
    return static_cast<std::size_t>(it - keys_.begin());
}

bool PermSet::contains(const Perm& p) const { return index_of(p) != npos; }

bool PermSet::is_subset_of(const PermSet& other) const {
    if (n_ != other.n_) return false;
    return std::includes(other.keys_.begin(), other.keys_.end(),
                         keys_.begin(), keys_.end());
}

PermSet product_set(const PermSet& a, const PermSet& b) {
    if (a.carrier() != b.carrier())
        throw ValidationError("product set needs a common carrier");
    std::vector<Perm> out;
    out.reserve(a.size() * b.size());
    for (const Perm& v : a.elements())
        for (const Perm& w : b.elements())
            out.push_back(compose(v, w));
    return PermSet(a.carrier(), std::move(out));
}

Subgroup Subgroup::symmetric_group(int n, int cap) {
    check_carrier(n);
    if (n > cap) {
        std::ostringstream os;
        os << "symmetric group on " << n << " points exceeds the cap of " << cap;
        throw CapError(os.str());
    }
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Perm> elems;
    do {
        elems.push_back(Perm::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return Subgroup(PermSet(n, std::move(elems)));
}

Subgroup Subgroup::trivial(int n) {
    return Subgroup(PermSet(n, {Perm::identity(n)}));
}

Subgroup Subgroup::from_elements(int n, std::vector<Perm> elements) {
    Subgroup g(PermSet(n, std::move(elements)));
    std::string why;
    if (!g.closure_audit(&why))
        throw ValidationError("element set is not a subgroup: " + why);
    return g;
}

Subgroup Subgroup::generated_by(int n, const std::vector<Perm>& gens, std::size_t cap) {
    for (const Perm& g : gens)
        if (g.size() != n)
            throw ValidationError("generator carrier mismatch");
    std::vector<Perm> work{Perm::identity(n)};
    std::set<std::uint64_t> seen{work.front().key()};
    for (std::size_t next = 0; next < work.size(); ++next) {
        Perm x = work[next];
        for (const Perm& g : gens) {
            Perm y = compose(g, x);
            if (seen.insert(y.key()).second) {
                work.push_back(y);
                if (work.size() > cap) {
                    std::ostringstream os;
                    os << "generated subgroup exceeds cap " << cap;
                    throw CapError(os.str());
                }
            }
        }
    }
    return Subgroup(PermSet(n, std::move(work)));
}

Subgroup Subgroup::stabilizer_of_partition(const Partition& gamma) {
    int n = gamma.carrier();
    check_carrier(n);
    // direct product of the symmetric groups on each block
    std::vector<std::vector<int>> partial{std::vector<int>(static_cast<std::size_t>(n), -1)};
    for (const auto& block : gamma.blocks()) {
        std::vector<int> arrangement = block;   // images for the block, in block order
        std::vector<std::vector<int>> grown;
        std::sort(arrangement.begin(), arrangement.end());
        do {
            for (const auto& base : partial) {
                std::vector<int> img = base;
                for (std::size_t k = 0; k < block.size(); ++k)
                    img[static_cast<std::size_t>(block[k])] = arrangement[k];
                grown.push_back(std::move(img));
            }
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        partial = std::move(grown);
    }
    std::vector<Perm> elems;
    elems.reserve(partial.size());
    for (const auto& img : partial) elems.push_back(Perm::from_images(img));
    return Subgroup(PermSet(n, std::move(elems)));
}

Subgroup Subgroup::point_stabilizer(int n, int a) {
    check_carrier(n);
    if (a < 0 || a >= n) throw ValidationError("point stabilizer point out of range");
    std::vector<int> rest;
    for (int x = 0; x < n; ++x)
        if (x != a) rest.push_back(x);
    std::vector<Perm> elems;
    std::vector<int> target = rest;
    do {
        std::vector<int> img(static_cast<std::size_t>(n));
        img[static_cast<std::size_t>(a)] = a;
        for (std::size_t k = 0; k < rest.size(); ++k)
            img[static_cast<std::size_t>(rest[k])] = target[k];
        elems.push_back(Perm::from_images(img));
    } while (std::next_permutation(target.begin(), target.end()));
    return Subgroup(PermSet(n, std::move(elems)));
}

bool Subgroup::closure_audit(std::string* why) const {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (!set_.contains(Perm::identity(carrier())))
        return fail("identity missing");
    for (const Perm& v : elements())
        if (!set_.contains(inverse(v)))
            return fail("inverse of " + to_cycles(v) + " missing");
    for (const Perm& v : elements())
        for (const Perm& w : elements())
            if (!set_.contains(compose(v, w)))
                return fail("product " + to_cycles(v) + " * " + to_cycles(w) + " missing");
    return true;
}

Subgroup conjugate(const Perm& g, const Subgroup& V) {
    if (g.size() != V.carrier())
        throw ValidationError("conjugation needs matching carrier sizes");
    Perm gi = inverse(g);
    std::vector<Perm> elems;
    elems.reserve(V.size());
    for (const Perm& v : V.elements()) elems.push_back(compose(g, compose(v, gi)));
    return Subgroup(PermSet(V.carrier(), std::move(elems)));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.carrier() != b.carrier())
        throw ValidationError("subgroup intersection needs a common carrier");
    std::vector<Perm> elems;
    for (const Perm& v : a.elements())
        if (b.contains(v)) elems.push_back(v);
    return Subgroup(PermSet(a.carrier(), std::move(elems)));
}

} // namespace uniflab
