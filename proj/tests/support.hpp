#pragma once
// Shared fixtures, random generators and brute-force oracles for the tests.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kosq/core.hpp"
#include "kosq/ingest.hpp"

namespace kosq::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(KOSQ_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Kos load_fixture(const std::string& name) {
    NativeOptions options;
    options.name = name;
    return parse_native(read_fixture(name), options).value;
}

inline Concept concept_of(const std::string& id, const std::string& label = {}) {
    Concept c;
    c.id = id;
    c.preferred_label = label.empty() ? id : label;
    return c;
}

// Kos with concepts "c0".."c{n-1}" and the given edges.
inline Kos numbered_kos(std::size_t n, std::vector<RelationEdge> edges,
                        KosKind kind = KosKind::Thesaurus) {
    std::vector<Concept> cs;
    for (std::size_t i = 0; i < n; ++i) cs.push_back(concept_of("c" + std::to_string(i)));
    return Kos("generated", kind, std::move(cs), std::move(edges));
}

inline std::string cid(std::size_t i) { return "c" + std::to_string(i); }

// Kos from (narrower, broader) pairs over named concepts; all Hyponymy.
inline Kos tree_kos(const std::vector<std::string>& ids,
                    const std::vector<std::pair<std::string, std::string>>& broader) {
    std::vector<Concept> cs;
    for (const auto& id : ids) cs.push_back(concept_of(id));
    std::vector<RelationEdge> es;
    for (const auto& [n, b] : broader) es.push_back({n, b, kHyponymy});
    return Kos("tree", KosKind::Thesaurus, std::move(cs), std::move(es));
}

// Random digraph over n concepts. Hierarchy edges (kBroader / kHyponymy)
// have distinct (source, target) pairs; some association and meronymy edges
// are mixed in and must be ignored by the default view.
inline Kos random_kos(std::mt19937& rng, std::size_t max_nodes, double density,
                      bool acyclic, bool allow_self_loops = false) {
    std::uniform_int_distribution<std::size_t> size(1, max_nodes);
    const auto n = size(rng);
    std::bernoulli_distribution take(density);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution rare(0.1);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);  // hidden topological order
    std::vector<RelationEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (allow_self_loops && !acyclic && rare(rng))
                    edges.push_back({cid(i), cid(i), kHyponymy});
                continue;
            }
            if (acyclic && perm[i] < perm[j]) continue;
            if (take(rng)) edges.push_back({cid(i), cid(j), coin(rng) ? kBroader : kHyponymy});
            else if (rare(rng)) edges.push_back({cid(i), cid(j), rare(rng) ? kMeronymy : kAssociation});
        }
    std::shuffle(edges.begin(), edges.end(), rng);
    return numbered_kos(n, std::move(edges));
}

// Random forest: each node i > 0 picks a parent among earlier nodes or none.
struct Forest {
    Kos kos;
    std::size_t roots = 0;
};

inline Forest random_forest(std::mt19937& rng, std::size_t max_nodes) {
    std::uniform_int_distribution<std::size_t> size(1, max_nodes);
    const auto n = size(rng);
    std::bernoulli_distribution new_root(0.15);
    std::vector<RelationEdge> edges;
    std::size_t roots = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (new_root(rng)) {
            ++roots;
            continue;
        }
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        edges.push_back({cid(i), cid(parent(rng)), kHyponymy});
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return {numbered_kos(n, std::move(edges)), roots};
}

// Same graph with ids renamed and concepts and edges reordered. `renamed`,
// when given, receives old id -> new id.
inline Kos relabel_and_shuffle(const Kos& kos, std::mt19937& rng,
                               std::map<ConceptId, ConceptId>* renamed = nullptr) {
    std::vector<std::size_t> perm(kos.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<ConceptId, ConceptId> rename;
    std::vector<Concept> cs;
    for (std::size_t i = 0; i < kos.size(); ++i) {
        Concept c = kos.concepts()[i];
        rename[c.id] = "z" + std::to_string(perm[i]) + "_" + c.id;
        c.id = rename[c.id];
        cs.push_back(std::move(c));
    }
    std::shuffle(cs.begin(), cs.end(), rng);
    std::vector<RelationEdge> es;
    for (const auto& e : kos.edges()) es.push_back({rename[e.source], rename[e.target], e.rtype});
    std::shuffle(es.begin(), es.end(), rng);
    if (renamed) *renamed = rename;
    return Kos(kos.name(), kos.kind(), std::move(cs), std::move(es));
}

inline std::string random_string(std::mt19937& rng, std::size_t max_len,
                                 const std::string& alphabet) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s(len(rng), ' ');
    for (auto& ch : s) ch = alphabet[pick(rng)];
    return s;
}

inline std::string random_bytes(std::mt19937& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> byte(0, 255);
    std::string s(len(rng), '\0');
    for (auto& ch : s) ch = static_cast<char>(byte(rng));
    return s;
}

// ---- oracles -------------------------------------------------------------

// Boolean adjacency (narrower -> broader) of the default generalization view,
// built straight from the edge list.
struct Matrix {
    std::size_t n = 0;
    std::vector<std::vector<bool>> m;
};

inline Matrix default_view_matrix(const Kos& kos) {
    Matrix out{kos.size(), std::vector<std::vector<bool>>(kos.size(), std::vector<bool>(kos.size()))};
    for (const auto& e : kos.edges()) {
        if (e.rtype != kBroader && e.rtype != kHyponymy) continue;
        out.m[kos.index_of(e.source)][kos.index_of(e.target)] = true;
    }
    return out;
}

// reach[i][j]: a path of one or more steps from i to j (Warshall).
inline std::vector<std::vector<bool>> closure(const Matrix& adj) {
    auto r = adj.m;
    for (std::size_t k = 0; k < adj.n; ++k)
        for (std::size_t i = 0; i < adj.n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < adj.n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

// Longest path (in edges) from each node up to a top term, by enumerating
// every simple upward path.
inline std::vector<std::size_t> longest_paths_by_enumeration(const Matrix& adj) {
    std::vector<std::size_t> best(adj.n, 0);
    std::function<void(std::size_t, std::size_t, std::size_t, std::vector<bool>&)> walk =
        [&](std::size_t start, std::size_t v, std::size_t len, std::vector<bool>& on) {
            best[start] = std::max(best[start], len);
            for (std::size_t w = 0; w < adj.n; ++w)
                if (adj.m[v][w] && !on[w]) {
                    on[w] = true;
                    walk(start, w, len + 1, on);
                    on[w] = false;
                }
        };
    for (std::size_t s = 0; s < adj.n; ++s) {
        std::vector<bool> on(adj.n);
        on[s] = true;
        walk(s, s, 0, on);
    }
    return best;
}

// tree balance from the formula, descendant sets from the closure.
inline double tree_balance_oracle(const Matrix& adj) {
    const auto reach = closure(adj);
    double sum_cv = 0;
    std::size_t branching = 0;
    for (std::size_t p = 0; p < adj.n; ++p) {
        std::vector<double> sizes;
        for (std::size_t c = 0; c < adj.n; ++c) {
            if (!adj.m[c][p]) continue;
            double s = 1;
            for (std::size_t d = 0; d < adj.n; ++d)
                if (reach[d][c]) s += 1;
            sizes.push_back(s);
        }
        if (sizes.size() < 2) continue;
        double mean = 0;
        for (double s : sizes) mean += s;
        mean /= static_cast<double>(sizes.size());
        double var = 0;
        for (double s : sizes) var += (s - mean) * (s - mean);
        var /= static_cast<double>(sizes.size());
        sum_cv += std::sqrt(var) / mean;
        ++branching;
    }
    return branching == 0 ? 1.0 : 1.0 / (1.0 + sum_cv / static_cast<double>(branching));
}

// All-pairs undirected distances over edges accepted by `accept`
// (Floyd-Warshall); npos when disconnected.
inline std::vector<std::vector<std::size_t>> all_pairs_distances(
    const Kos& kos, const std::function<bool(const RelationType&)>& accept) {
    const auto n = kos.size();
    const std::size_t inf = npos / 4;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : kos.edges()) {
        if (!accept(e.rtype)) continue;
        const auto s = kos.index_of(e.source), t = kos.index_of(e.target);
        if (s == npos || t == npos || s == t) continue;
        d[s][t] = d[t][s] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= inf) x = npos;
    return d;
}

inline std::size_t levenshtein_oracle(const std::string& a, std::size_t i, const std::string& b,
                                      std::size_t j) {
    if (i == 0) return j;
    if (j == 0) return i;
    return std::min({levenshtein_oracle(a, i - 1, b, j) + 1, levenshtein_oracle(a, i, b, j - 1) + 1,
                     levenshtein_oracle(a, i - 1, b, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
}

// Plain recursive edit distance over bytes; exponential, short inputs only.
inline std::size_t levenshtein_oracle(const std::string& a, const std::string& b) {
    return levenshtein_oracle(a, a.size(), b, b.size());
}

// Cosine of binary incidence vectors over the union of both sets.
inline double incidence_cosine(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> all(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    double dot = 0, na = 0, nb = 0;
    for (const auto& x : all) {
        const double va = a.count(x) ? 1 : 0;
        const double vb = b.count(x) ? 1 : 0;
        dot += va * vb;
        na += va * va;
        nb += vb * vb;
    }
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace kosq::testing
