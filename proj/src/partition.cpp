#include "uniflab/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "uniflab/perm.hpp"

namespace uniflab {

namespace {

std::string bad_index(int x, int n) {
    std::ostringstream os;
    os << "partition index " << x << " out of range for carrier " << n;
    return os.str();
}

} // namespace

Partition::Partition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)), block_of_(static_cast<std::size_t>(n), -1) {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (int x : blocks_[i]) block_of_[static_cast<std::size_t>(x)] = static_cast<int>(i);
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& raw) {
    if (n < 0) throw ValidationError("partition carrier must be nonnegative");
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].empty()) {
            std::ostringstream os;
            os << "partition block " << i << " is empty";
            throw ValidationError(os.str());
        }
        for (int x : raw[i]) {
            if (x < 0 || x >= n) throw ValidationError(bad_index(x, n));
            if (seen[static_cast<std::size_t>(x)]++) {
                std::ostringstream os;
                os << "partition blocks overlap at index " << x;
                throw ValidationError(os.str());
            }
        }
    }
    for (int x = 0; x < n; ++x) {
        if (!seen[static_cast<std::size_t>(x)]) {
            std::ostringstream os;
            os << "partition blocks do not cover index " << x;
            throw ValidationError(os.str());
        }
    }
    return Partition(n, raw);
}

Partition Partition::from_block_ids(int n, const std::vector<int>& id_of_point) {
    if (static_cast<int>(id_of_point.size()) != n)
        throw ValidationError("block id vector does not match carrier size");
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot_of_id;
    for (int x = 0; x < n; ++x) {
        int id = id_of_point[static_cast<std::size_t>(x)];
        std::size_t slot = slot_of_id.size();
        for (std::size_t k = 0; k < slot_of_id.size(); ++k)
            if (slot_of_id[k] == id) { slot = k; break; }
        if (slot == slot_of_id.size()) {
            slot_of_id.push_back(id);
            blocks.emplace_back();
        }
        blocks[slot].push_back(x);
    }
    return from_blocks(n, blocks);
}

Partition Partition::singletons(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) blocks.push_back({x});
    return from_blocks(n, blocks);
}

Partition Partition::top(int n) {
    if (n <= 0) throw ValidationError("top partition needs a nonempty carrier");
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return from_blocks(n, {all});
}

int Partition::block_of(int x) const {
    if (x < 0 || x >= n_) throw ValidationError(bad_index(x, n_));
    return block_of_[static_cast<std::size_t>(x)];
}

bool Partition::same_block(int x, int y) const {
    return block_of(x) == block_of(y);
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (const auto& b : blocks_) {
        os << '{';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) os << ' ';
            os << b[i];
        }
        os << '}';
    }
    return os.str();
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
}

Partition meet(const Partition& a, const Partition& b) {
    if (a.carrier() != b.carrier())
        throw ValidationError("meet needs partitions of the same carrier");
    int n = a.carrier();
    // pair (block in a, block in b) determines the meet block
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        ids[static_cast<std::size_t>(x)] =
            a.block_of(x) * static_cast<int>(b.block_count()) + b.block_of(x);
    return Partition::from_block_ids(n, ids);
}

bool refines(const Partition& gamma, const Partition& beta) {
    if (gamma.carrier() != beta.carrier())
        throw ValidationError("refines needs partitions of the same carrier");
    for (const auto& block : gamma.blocks()) {
        int home = beta.block_of(block.front());
        for (int x : block)
            if (beta.block_of(x) != home) return false;
    }
    return true;
}

Partition pushforward(const Perm& g, const Partition& gamma) {
    if (g.size() != gamma.carrier())
        throw ValidationError("pushforward needs matching carrier sizes");
    std::vector<std::vector<int>> blocks;
    blocks.reserve(gamma.block_count());
    for (const auto& b : gamma.blocks()) {
        std::vector<int> image;
        image.reserve(b.size());
        for (int x : b) image.push_back(g(x));
        blocks.push_back(std::move(image));
    }
    return Partition::from_blocks(gamma.carrier(), blocks);
}

Partition pullback(const Perm& g, const Partition& gamma) {
    return pushforward(inverse(g), gamma);
}

std::vector<Partition> all_partitions(int n, int cap) {
    if (n > cap) {
        std::ostringstream os;
        os << "all_partitions carrier " << n << " exceeds cap " << cap;
        throw CapError(os.str());
    }
    if (n <= 0) throw ValidationError("all_partitions needs a positive carrier");
    // restricted growth strings: ids[0] = 0, ids[x] <= max(ids[0..x-1]) + 1
    std::vector<Partition> out;
    std::vector<int> ids(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(Partition::from_block_ids(n, ids));
        int x = n - 1;
        for (; x > 0; --x) {
            int limit = 0;
            for (int k = 0; k < x; ++k) limit = std::max(limit, ids[static_cast<std::size_t>(k)]);
            if (ids[static_cast<std::size_t>(x)] <= limit) break;
        }
        if (x == 0) return out;
        ++ids[static_cast<std::size_t>(x)];
        for (int k = x + 1; k < n; ++k) ids[static_cast<std::size_t>(k)] = 0;
    }
}

} // namespace uniflab
