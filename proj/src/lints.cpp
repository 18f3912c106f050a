#include "kosq/lints.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kosq/graph.hpp"

namespace kosq {

namespace {

std::set<RelationType> view_types(const ViewOptions& v) {
    std::set<RelationType> t{kBroader, kHyponymy};
    if (v.include_meronymy) t.insert(kMeronymy);
    if (v.include_instances) t.insert(kInstanceOf);
    return t;
}

// Kos edges of the given types, keyed by (source index, target index).
class EdgeIndex {
public:
    EdgeIndex(const Kos& kos, const std::set<RelationType>& types) : kos_(kos) {
        for (std::size_t i = 0; i < kos.edges().size(); ++i) {
            const auto s = kos.source_index(i);
            const auto t = kos.target_index(i);
            if (s == npos || t == npos || !types.count(kos.edges()[i].rtype)) continue;
            by_pair_[key(s, t)].push_back(i);
        }
    }

    std::vector<RelationEdge> between(std::size_t s, std::size_t t) const {
        std::vector<RelationEdge> out;
        if (auto it = by_pair_.find(key(s, t)); it != by_pair_.end())
            for (auto i : it->second) out.push_back(kos_.edges()[i]);
        return out;
    }

private:
    std::uint64_t key(std::size_t s, std::size_t t) const {
        return static_cast<std::uint64_t>(s) * kos_.size() + t;
    }

    const Kos& kos_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_pair_;
};

std::string path_text(const Kos& kos, const std::vector<std::size_t>& path) {
    std::string out;
    for (auto v : path) {
        if (!out.empty()) out += " -> ";
        out += kos.concepts()[v].id;
    }
    return out;
}

std::string label(const Kos& kos, std::size_t v) { return kos.concepts()[v].preferred_label; }

}  // namespace

std::vector<LintFinding> detect_circularity(const Kos& kos, const ViewOptions& options) {
    const auto view = generalization_view(kos, options);
    const EdgeIndex edges(kos, view_types(options));
    const auto& ids = kos.concepts();
    std::vector<LintFinding> out;

    for (std::size_t v = 0; v < view.node_count; ++v) {
        const auto& ps = view.parents[v];
        if (!std::binary_search(ps.begin(), ps.end(), v)) continue;
        out.push_back({"circularity", Severity::Error, {ids[v].id}, edges.between(v, v),
                       "'" + label(kos, v) + "' is its own broader concept",
                       ids[v].id + " -> " + ids[v].id});
    }

    for (auto& comp : strongly_connected_components(view.parents)) {
        if (comp.size() < 2) continue;
        std::vector<bool> in_comp(view.node_count, false);
        for (auto v : comp) in_comp[v] = true;
        const auto start = *std::min_element(comp.begin(), comp.end(), [&](auto a, auto b) {
            return ids[a].id < ids[b].id;
        });

        // Members in depth-first order along broader edges from the smallest id.
        std::vector<std::size_t> traversal;
        std::vector<bool> seen(view.node_count, false);
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            if (seen[v]) continue;
            seen[v] = true;
            traversal.push_back(v);
            const auto& ps = view.parents[v];
            for (auto it = ps.rbegin(); it != ps.rend(); ++it)
                if (in_comp[*it] && !seen[*it]) stack.push_back(*it);
        }

        // Shortest cycle through `start` for the evidence line.
        std::vector<std::size_t> prev(view.node_count, npos);
        std::vector<std::size_t> queue{start};
        std::vector<std::size_t> cycle;
        for (std::size_t head = 0; head < queue.size() && cycle.empty(); ++head) {
            const auto v = queue[head];
            for (auto w : view.parents[v]) {
                if (!in_comp[w] || w == v) continue;
                if (w == start) {
                    cycle.push_back(v);
                    while (cycle.back() != start) cycle.push_back(prev[cycle.back()]);
                    std::reverse(cycle.begin(), cycle.end());
                    cycle.push_back(start);
                    break;
                }
                if (prev[w] != npos) continue;
                prev[w] = v;
                queue.push_back(w);
            }
        }

        LintFinding f{"circularity", Severity::Error, {}, {}, {}, path_text(kos, cycle)};
        std::string names;
        for (auto v : traversal) {
            f.concepts.push_back(ids[v].id);
            names += (names.empty() ? "'" : ", '") + label(kos, v) + "'";
            for (auto p : view.parents[v])
                if (in_comp[p] && p != v)
                    for (auto& e : edges.between(v, p)) f.edges.push_back(std::move(e));
        }
        std::sort(f.edges.begin(), f.edges.end());
        f.explanation = names + " form a hierarchy cycle: each is a broader and a narrower "
                                "concept of itself";
        out.push_back(std::move(f));
    }
    sort_findings(out);
    return out;
}

std::vector<LintFinding> detect_skipping(const Kos& kos, const ViewOptions& options) {
    const auto view = generalization_view(kos, options);
    require_acyclic(kos, view, "detect_skipping");
    std::vector<std::size_t> multi;
    for (std::size_t v = 0; v < view.node_count; ++v)
        if (view.parents[v].size() >= 2) multi.push_back(v);
    std::vector<LintFinding> out;
    if (multi.empty()) return out;

    const EdgeIndex edges(kos, view_types(options));
    const auto order = *successors_first_order(view.parents);
    for_each_reach_chunk(view.parents, order, [&](const ReachChunk& ancestors) {
        for (auto a : multi) {
            const auto& ps = view.parents[a];
            for (auto b : ps) {
                if (!ancestors.covers(b)) continue;
                auto via = std::find_if(ps.begin(), ps.end(), [&](auto p) {
                    return p != b && ancestors.test(p, b);
                });
                if (via == ps.end()) continue;
                std::vector<std::size_t> path{a, *via};
                while (path.back() != b) {
                    const auto& up = view.parents[path.back()];
                    path.push_back(*std::find_if(up.begin(), up.end(), [&](auto q) {
                        return q == b || ancestors.test(q, b);
                    }));
                }
                out.push_back({"skipping", Severity::Warning,
                               {kos.concepts()[a].id, kos.concepts()[b].id}, edges.between(a, b),
                               "'" + label(kos, b) + "' is linked directly as broader concept of '" +
                                   label(kos, a) + "' although it is already reached through '" +
                                   label(kos, *via) + "'; the edge skips a hierarchy level",
                               path_text(kos, path)});
            }
        }
    });
    sort_findings(out);
    return out;
}

std::vector<LintFinding> detect_redundancy(const Kos& kos) {
    const auto& cs = kos.concepts();
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < cs.size(); ++i)
        by_label[normalize_label(cs[i].preferred_label)].push_back(i);

    const auto view = generalization_view(kos, {true, true});
    auto position = [&](std::size_t v) {
        std::string s = cs[v].id + " (broader: ";
        if (view.parents[v].empty()) s += "none";
        for (std::size_t k = 0; k < view.parents[v].size(); ++k)
            s += (k ? ", " : "") + cs[view.parents[v][k]].id;
        return s + ")";
    };

    std::vector<LintFinding> out;
    for (const auto& [norm, members] : by_label) {
        if (members.size() < 2) continue;
        LintFinding f{"redundancy", Severity::Error, {}, {}, {}, std::string{}};
        for (auto v : members) f.concepts.push_back(cs[v].id);
        std::sort(f.concepts.begin(), f.concepts.end());
        for (auto v : members) *f.evidence += (f.evidence->empty() ? "" : "; ") + position(v);
        f.explanation = "the concept '" + cs[members.front()].preferred_label + "' appears " +
                        std::to_string(members.size()) +
                        " times; keep one position and link the others with an association";
        out.push_back(std::move(f));
    }

    std::set<std::pair<std::size_t, std::size_t>> reported;
    for (std::size_t b = 0; b < cs.size(); ++b) {
        for (const auto& alt : cs[b].alt_labels) {
            auto it = by_label.find(normalize_label(alt));
            if (it == by_label.end()) continue;
            for (auto a : it->second) {
                if (a == b || !reported.emplace(a, b).second) continue;
                std::vector<ConceptId> ids{cs[a].id, cs[b].id};
                std::sort(ids.begin(), ids.end());
                out.push_back({"redundancy", Severity::Warning, std::move(ids), {},
                               "'" + alt + "' is an alternative label of '" + cs[b].preferred_label +
                                   "' and also the preferred label of concept '" + cs[a].id + "'",
                               std::nullopt});
            }
        }
    }
    sort_findings(out);
    return out;
}

namespace {

using PropSet = std::vector<int>;  // sorted interned property ids

PropSet merge(const PropSet& a, const PropSet& b) {
    PropSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool has(const PropSet& s, int p) { return std::binary_search(s.begin(), s.end(), p); }

}  // namespace

std::vector<LintFinding> detect_semantic_inconsistency(const Kos& kos) {
    const auto view = hierarchy_view(kos, {kBroader, kHyponymy, kInstanceOf});
    require_acyclic(kos, view, "detect_semantic_inconsistency");
    const auto& cs = kos.concepts();

    std::map<std::string, int> intern;
    for (const auto& c : cs) {
        for (const auto& p : c.asserted_properties) intern.emplace(p, 0);
        for (const auto& p : c.negated_properties) intern.emplace(p, 0);
    }
    std::vector<LintFinding> out;
    if (intern.empty()) return out;
    std::vector<std::string> names;
    for (auto& [name, id] : intern) {
        id = static_cast<int>(names.size());
        names.push_back(name);
    }

    const std::size_t n = cs.size();
    std::vector<PropSet> own_pos(n), own_neg(n), pos(n), neg(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& p : cs[v].asserted_properties) own_pos[v].push_back(intern[p]);
        for (const auto& p : cs[v].negated_properties) own_neg[v].push_back(intern[p]);
    }
    const auto order = *successors_first_order(view.parents);
    for (auto v : order) {
        pos[v] = own_pos[v];
        neg[v] = own_neg[v];
        for (auto p : view.parents[v]) {
            pos[v] = merge(pos[v], pos[p]);
            neg[v] = merge(neg[v], neg[p]);
        }
    }

    // Nearest concept at or above `from` that states the property.
    auto source_path = [&](std::size_t from, int prop, const std::vector<PropSet>& own) {
        std::vector<std::size_t> prev(n, npos);
        std::deque<std::size_t> queue{from};
        prev[from] = from;
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            if (has(own[v], prop)) {
                std::vector<std::size_t> path{v};
                while (path.back() != from) path.push_back(prev[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            for (auto p : view.parents[v]) {
                if (prev[p] != npos) continue;
                prev[p] = v;
                queue.push_back(p);
            }
        }
        return std::vector<std::size_t>{};
    };

    for (std::size_t c = 0; c < n; ++c) {
        for (int prop : pos[c]) {
            if (!has(neg[c], prop)) continue;
            bool origin = has(own_pos[c], prop) || has(own_neg[c], prop);
            if (!origin) {
                const auto& ps = view.parents[c];
                for (auto p1 : ps)
                    for (auto p2 : ps)
                        if (p1 != p2 && has(pos[p1], prop) && has(neg[p2], prop)) origin = true;
            }
            if (!origin) continue;

            const auto yes = source_path(c, prop, own_pos);
            const auto no = source_path(c, prop, own_neg);
            const auto& name = names[static_cast<std::size_t>(prop)];
            LintFinding f{"semantic_inconsistency", Severity::Error, {cs[c].id}, {}, {}, {}};
            for (auto v : {yes.back(), no.back()})
                if (v != c && std::find(f.concepts.begin(), f.concepts.end(), cs[v].id) ==
                                  f.concepts.end())
                    f.concepts.push_back(cs[v].id);
            f.explanation = "'" + cs[c].preferred_label + "' inherits property '" + name +
                            "' but the property is also negated for it";
            f.evidence = path_text(kos, yes) + " (PROP " + name + "); " + path_text(kos, no) +
                         " (NOT-PROP " + name + ")";
            out.push_back(std::move(f));
        }
    }
    sort_findings(out);
    return out;
}

std::vector<LintFinding> detect_tennis(const Kos& kos, const std::vector<ConceptPair>& pairs,
                                       std::size_t max_distance) {
    std::set<std::pair<std::size_t, std::size_t>> wanted;
    for (const auto& [a, b] : pairs) {
        const auto ia = kos.index_of(a);
        const auto ib = kos.index_of(b);
        if (ia == npos) throw KosError("unknown concept id '" + a + "' in related pair");
        if (ib == npos) throw KosError("unknown concept id '" + b + "' in related pair");
        if (ia == ib) continue;
        const auto& ida = kos.concepts()[ia].id;
        const auto& idb = kos.concepts()[ib].id;
        wanted.emplace(ida < idb ? ia : ib, ida < idb ? ib : ia);
    }
    std::vector<LintFinding> out;
    if (wanted.empty()) return out;

    const std::size_t n = kos.size();
    std::vector<std::vector<std::size_t>> adj(n);
    std::set<std::pair<std::size_t, std::size_t>> associated;
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const auto s = kos.source_index(i);
        const auto t = kos.target_index(i);
        if (s == npos || t == npos) continue;
        adj[s].push_back(t);
        adj[t].push_back(s);
        if (kos.edges()[i].rtype == kAssociation) {
            associated.emplace(s, t);
            associated.emplace(t, s);
        }
    }

    // Searching a little past the limit is enough to report how far apart a
    // flagged pair is without walking the whole graph for every pair.
    const std::size_t horizon = std::max<std::size_t>(4 * max_distance, 8);
    std::vector<std::size_t> dist(n, npos);
    std::vector<std::size_t> touched;
    auto distance = [&](std::size_t from, std::size_t to) -> std::optional<std::size_t> {
        for (auto v : touched) dist[v] = npos;
        touched.assign({from});
        dist[from] = 0;
        for (std::size_t head = 0; head < touched.size(); ++head) {
            const auto v = touched[head];
            if (dist[v] >= horizon) break;
            for (auto w : adj[v]) {
                if (dist[w] != npos) continue;
                dist[w] = dist[v] + 1;
                touched.push_back(w);
                if (w == to) return dist[w];
            }
        }
        return std::nullopt;
    };

    for (const auto& [a, b] : wanted) {
        if (associated.count({a, b})) continue;
        const auto d = distance(a, b);
        if (d && *d <= max_distance) continue;
        const auto& ca = kos.concepts()[a];
        const auto& cb = kos.concepts()[b];
        out.push_back({"tennis", Severity::Warning, {ca.id, cb.id}, {},
                       "'" + ca.preferred_label + "' and '" + cb.preferred_label +
                           "' are related but " +
                           (d ? std::to_string(*d) + " edges apart (limit " +
                                    std::to_string(max_distance) + ")"
                              : "more than " + std::to_string(horizon) +
                                    " edges apart or not connected") +
                           "; consider '" + ca.preferred_label + " SEE ALSO " +
                           cb.preferred_label + "'",
                       d ? std::optional<std::string>("shortest path length " + std::to_string(*d))
                         : std::nullopt});
    }
    sort_findings(out);
    return out;
}

namespace {

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words{
        "the", "and", "for", "with", "from", "into", "onto", "over", "under", "that", "this",
        "its", "are", "was", "were", "not", "but", "all", "any", "other", "others", "per",
        "via", "than", "then", "their", "them", "they", "has", "have", "had", "who", "whom",
        "which", "what", "when", "where", "why", "how", "also", "etc", "general", "misc",
        "miscellaneous", "use", "used", "using", "type", "types", "kind", "kinds"};
    return words;
}

std::vector<std::string> content_tokens(std::string_view label) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 3 && !stopwords().count(cur)) out.push_back(cur);
        cur.clear();
    };
    for (char c : normalize_label(label)) {
        const auto u = static_cast<unsigned char>(c);
        if ((u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u >= 0x80) {
            cur.push_back(c);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

}  // namespace

std::vector<ConceptPair> suggest_related_pairs(const Kos& kos) {
    std::unordered_map<std::string, std::vector<std::size_t>> by_token;
    const auto& cs = kos.concepts();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto tokens = content_tokens(cs[i].preferred_label);
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (auto& t : tokens) by_token[t].push_back(i);
    }
    std::set<ConceptPair> pairs;
    for (const auto& [token, members] : by_token) {
        if (members.size() > kMaxSuggestionGroup) continue;
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                const auto& a = cs[members[x]].id;
                const auto& b = cs[members[y]].id;
                pairs.emplace(std::min(a, b), std::max(a, b));
            }
    }
    return {pairs.begin(), pairs.end()};
}

CompletenessEstimate completeness_ratio(std::size_t present, std::size_t missing) {
    const auto total = present + missing;
    if (total == 0) throw KosError("completeness needs at least one present or missing term");
    return {present, missing, static_cast<double>(present) / static_cast<double>(total),
            static_cast<double>(missing) / static_cast<double>(total)};
}

CorpusCoverage corpus_coverage(const Kos& kos, const std::vector<std::string>& corpus_vocab) {
    if (corpus_vocab.empty()) throw KosError("corpus vocabulary is empty");
    std::set<std::string> kos_vocab;
    for (const auto& c : kos.concepts()) {
        kos_vocab.insert(normalize_label(c.preferred_label));
        for (const auto& alt : c.alt_labels) kos_vocab.insert(normalize_label(alt));
    }
    std::set<std::string> corpus;
    CorpusCoverage out;
    std::size_t shared = 0;
    for (const auto& raw : corpus_vocab) {
        auto term = normalize_label(raw);
        if (!corpus.insert(term).second) continue;
        if (kos_vocab.count(term)) {
            ++shared;
        } else {
            out.missing_terms.push_back(term);
        }
    }
    for (const auto& t : kos_vocab)
        if (!corpus.count(t)) out.surplus_terms.push_back(t);
    out.recall_like = static_cast<double>(shared) / static_cast<double>(corpus.size());
    out.precision_like =
        kos_vocab.empty() ? 0.0 : static_cast<double>(shared) / static_cast<double>(kos_vocab.size());
    return out;
}

}  // namespace kosq
