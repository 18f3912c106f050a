#include "kosq/graph.hpp"

#include <algorithm>

namespace kosq {

std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, npos), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != npos) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            Frame& f = call.back();
            const auto v = f.node;
            if (f.next < adj[v].size()) {
                const auto w = adj[v][f.next++];
                if (index[w] == npos) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::reverse(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                const auto u = call.back().node;
                low[u] = std::min(low[u], low[v]);
            }
        }
    }
    return out;
}

std::optional<std::vector<std::size_t>> successors_first_order(const Adjacency& adj) {
    const std::size_t n = adj.size();
    // Kahn on the reversed graph: a node is ready once all successors are placed.
    std::vector<std::size_t> pending(n);
    Adjacency reverse(n);
    for (std::size_t v = 0; v < n; ++v) {
        pending[v] = adj[v].size();
        for (auto w : adj[v]) reverse[w].push_back(v);
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        if (pending[v] == 0) order.push_back(v);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (auto u : reverse[order[head]])
            if (--pending[u] == 0) order.push_back(u);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

std::vector<std::size_t> find_cycle(const Adjacency& adj) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
        for (auto w : adj[v])
            if (w == v) return {v};
    }
    for (const auto& comp : strongly_connected_components(adj)) {
        if (comp.size() < 2) continue;
        std::vector<bool> in_comp(adj.size(), false);
        for (auto v : comp) in_comp[v] = true;
        // BFS from the first member back to itself inside the component.
        const auto start = comp.front();
        std::vector<std::size_t> prev(adj.size(), npos);
        std::vector<std::size_t> queue{start};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto v = queue[head];
            for (auto w : adj[v]) {
                if (!in_comp[w]) continue;
                if (w == start) {
                    std::vector<std::size_t> cycle{v};
                    while (cycle.back() != start) cycle.push_back(prev[cycle.back()]);
                    std::reverse(cycle.begin(), cycle.end());
                    return cycle;
                }
                if (prev[w] != npos) continue;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    return {};
}

void require_acyclic(const Kos& kos, const HierarchyView& view, const char* operation) {
    auto cycle = find_cycle(view.parents);
    if (cycle.empty()) return;
    std::vector<ConceptId> ids;
    std::string text;
    for (auto v : cycle) {
        ids.push_back(kos.concepts()[v].id);
        text += ids.back() + " -> ";
    }
    text += ids.front();
    throw CycleError(std::move(ids), std::string(operation) +
                                         " requires an acyclic hierarchy; cycle: " + text);
}

}  // namespace kosq
