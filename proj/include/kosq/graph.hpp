#pragma once
// Graph algorithms over HierarchyView adjacency lists.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "kosq/core.hpp"

namespace kosq {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Thrown by operations that require an acyclic hierarchy.
class CycleError : public KosError {
public:
    CycleError(std::vector<ConceptId> cycle, const std::string& what)
        : KosError(what), cycle_(std::move(cycle)) {}

    const std::vector<ConceptId>& cycle() const { return cycle_; }

private:
    std::vector<ConceptId> cycle_;
};

// Tarjan, iterative. Components come out in reverse topological order of the
// condensation; members in discovery order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj);

// Order in which every node appears after all of its `adj` successors,
// i.e. for adj = parents: top terms first. nullopt when cyclic.
std::optional<std::vector<std::size_t>> successors_first_order(const Adjacency& adj);

// One directed cycle (first node not repeated), empty when acyclic.
std::vector<std::size_t> find_cycle(const Adjacency& adj);

// Throws CycleError naming one cycle when the view is cyclic.
void require_acyclic(const Kos& kos, const HierarchyView& view, const char* operation);

// Bitset rows for one chunk of target nodes [first, first + 64 * words).
class ReachChunk {
public:
    ReachChunk(std::size_t nodes, std::size_t first, std::size_t words)
        : first_(first), words_(words), bits_(nodes * words, 0) {}

    std::size_t first() const { return first_; }
    std::size_t words() const { return words_; }
    bool covers(std::size_t target) const {
        return target >= first_ && target - first_ < 64 * words_;
    }
    bool test(std::size_t node, std::size_t target) const {
        const auto off = target - first_;
        return (row(node)[off / 64] >> (off % 64)) & 1u;
    }
    std::size_t count(std::size_t node) const {
        std::size_t n = 0;
        const auto* r = row(node);
        for (std::size_t w = 0; w < words_; ++w) n += std::popcount(r[w]);
        return n;
    }

    std::uint64_t* row(std::size_t node) { return bits_.data() + node * words_; }
    const std::uint64_t* row(std::size_t node) const { return bits_.data() + node * words_; }

private:
    std::size_t first_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Strict reachability along `adj`, chunked over target nodes so memory stays
// at nodes * 512 bytes. `order` must list each node after its successors
// (see successors_first_order). For every chunk, `visit(const ReachChunk&)`
// sees bit (v, u) set iff u is reachable from v in one or more steps.
template <typename Visit>
void for_each_reach_chunk(const Adjacency& adj, const std::vector<std::size_t>& order,
                          Visit&& visit) {
    const std::size_t n = adj.size();
    if (n == 0) return;
    const std::size_t words = std::min<std::size_t>(64, (n + 63) / 64);
    for (std::size_t first = 0; first < n; first += 64 * words) {
        ReachChunk chunk(n, first, words);
        for (auto v : order) {
            auto* dst = chunk.row(v);
            for (auto w : adj[v]) {
                const auto* src = chunk.row(w);
                for (std::size_t k = 0; k < words; ++k) dst[k] |= src[k];
                if (chunk.covers(w)) {
                    const auto off = w - first;
                    dst[off / 64] |= std::uint64_t{1} << (off % 64);
                }
            }
        }
        visit(static_cast<const ReachChunk&>(chunk));
    }
}

}  // namespace kosq
