#include "kosq/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_set>

namespace kosq {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string edge_text(const RelationEdge& e) {
    return e.source + " -[" + to_string(e.rtype) + "]-> " + e.target;
}

}  // namespace

bool is_valid_id(std::string_view s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](char c) { return is_space(c) || c == ';'; });
}

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    bool pending_space = false;
    for (char c : label) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(ascii_lower(c));
    }
    return out;
}

RelationType RelationType::custom(std::string name) {
    if (!is_valid_id(name)) throw KosError("invalid custom relation name '" + name + "'");
    return RelationType{RelationKind::Custom, std::move(name)};
}

bool RelationType::is_hierarchy() const {
    switch (kind) {
        case RelationKind::HierarchyUnspecified:
        case RelationKind::Hyponymy:
        case RelationKind::Meronymy:
        case RelationKind::InstanceOf:
            return true;
        default:
            return false;
    }
}

std::string_view to_string(RelationKind k) {
    switch (k) {
        case RelationKind::HierarchyUnspecified: return "hierarchy";
        case RelationKind::Hyponymy: return "hyponymy";
        case RelationKind::Meronymy: return "meronymy";
        case RelationKind::InstanceOf: return "instance_of";
        case RelationKind::Association: return "association";
        case RelationKind::GenIdentity: return "gen_identity";
        case RelationKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(const RelationType& t) {
    if (t.kind == RelationKind::Custom) return "custom:" + t.custom_name;
    return std::string(to_string(t.kind));
}

std::string_view to_string(KosKind k) {
    switch (k) {
        case KosKind::Folksonomy: return "folksonomy";
        case KosKind::Nomenclature: return "nomenclature";
        case KosKind::Classification: return "classification";
        case KosKind::Thesaurus: return "thesaurus";
        case KosKind::Ontology: return "ontology";
    }
    return "?";
}

std::optional<KosKind> parse_kos_kind(std::string_view s) {
    for (auto k : {KosKind::Folksonomy, KosKind::Nomenclature, KosKind::Classification,
                   KosKind::Thesaurus, KosKind::Ontology}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "?";
}

std::optional<Severity> parse_severity(std::string_view s) {
    for (auto v : {Severity::Error, Severity::Warning, Severity::Info}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

void sort_findings(std::vector<LintFinding>& findings) {
    std::stable_sort(findings.begin(), findings.end(),
                     [](const LintFinding& a, const LintFinding& b) {
                         return std::tie(a.check, a.concepts, a.edges) <
                                std::tie(b.check, b.concepts, b.edges);
                     });
}

Kos::Kos(std::string name, KosKind kind, std::vector<Concept> concepts,
         std::vector<RelationEdge> edges)
    : name_(std::move(name)), kind_(kind), concepts_(std::move(concepts)),
      edges_(std::move(edges)) {
    index_.reserve(concepts_.size());
    for (std::size_t i = 0; i < concepts_.size(); ++i) {
        const Concept& c = concepts_[i];
        if (!is_valid_id(c.id)) throw KosError("invalid concept id '" + c.id + "'");
        if (normalize_label(c.preferred_label).empty())
            throw KosError("concept '" + c.id + "' has an empty preferred label");
        if (!index_.emplace(c.id, i).second) throw KosError("duplicate concept id '" + c.id + "'");
        const std::string pref = normalize_label(c.preferred_label);
        for (const auto& alt : c.alt_labels) {
            if (normalize_label(alt) == pref)
                throw KosError("concept '" + c.id + "' repeats its preferred label as alt label");
        }
        for (const auto& p : c.asserted_properties) {
            if (c.negated_properties.count(p))
                throw KosError("concept '" + c.id + "' both asserts and negates property '" + p + "'");
        }
    }
    resolved_.reserve(edges_.size());
    for (const auto& e : edges_) resolved_.emplace_back(index_of(e.source), index_of(e.target));
}

std::size_t Kos::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? npos : it->second;
}

const Concept& Kos::at(std::string_view id) const {
    auto i = index_of(id);
    if (i == npos) throw KosError("unknown concept id '" + std::string(id) + "'");
    return concepts_[i];
}

std::vector<LintFinding> validate_graph(const Kos& kos) {
    std::vector<LintFinding> out;
    std::map<RelationEdge, std::size_t> seen;
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const RelationEdge& e = kos.edges()[i];
        const bool src_ok = kos.source_index(i) != npos;
        const bool dst_ok = kos.target_index(i) != npos;
        if (!src_ok || !dst_ok) {
            LintFinding f{"dangling_reference", Severity::Error, {}, {e}, {}, std::nullopt};
            std::string missing;
            if (src_ok) f.concepts.push_back(e.source);
            else missing = "'" + e.source + "'";
            if (dst_ok) f.concepts.push_back(e.target);
            else missing += (missing.empty() ? "'" : " and '") + e.target + "'";
            f.explanation = "edge " + edge_text(e) + " references unknown concept " + missing;
            out.push_back(std::move(f));
        }
        if (++seen[e] == 2) {
            std::vector<ConceptId> ids;
            if (src_ok) ids.push_back(e.source);
            if (dst_ok && e.target != e.source) ids.push_back(e.target);
            std::sort(ids.begin(), ids.end());
            out.push_back({"duplicate_edge", Severity::Warning, std::move(ids), {e},
                           "edge " + edge_text(e) + " is stated more than once", std::nullopt});
        }
        if (e.source == e.target && e.rtype.is_hierarchy() && src_ok) {
            out.push_back({"self_loop", Severity::Error, {e.source}, {e},
                           "concept '" + e.source + "' is its own broader concept",
                           std::nullopt});
        }
    }
    sort_findings(out);
    return out;
}

bool kind_permits(KosKind kind, const RelationType& rtype) {
    using R = RelationKind;
    switch (kind) {
        case KosKind::Folksonomy:
            return false;
        case KosKind::Nomenclature:
            return rtype.kind == R::GenIdentity || rtype.kind == R::Association;
        case KosKind::Classification:
            return rtype.kind == R::HierarchyUnspecified || rtype.kind == R::Association;
        case KosKind::Thesaurus:
            return rtype.kind == R::HierarchyUnspecified || rtype.kind == R::Hyponymy ||
                   rtype.kind == R::Meronymy || rtype.kind == R::InstanceOf ||
                   rtype.kind == R::Association;
        case KosKind::Ontology:
            return true;
    }
    return false;
}

std::vector<LintFinding> validate_kind(const Kos& kos) {
    std::vector<LintFinding> out;
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const RelationEdge& e = kos.edges()[i];
        if (kind_permits(kos.kind(), e.rtype)) continue;
        std::vector<ConceptId> ids;
        if (kos.source_index(i) != npos) ids.push_back(e.source);
        if (kos.target_index(i) != npos && e.target != e.source) ids.push_back(e.target);
        std::sort(ids.begin(), ids.end());
        out.push_back({"kind_capability", Severity::Warning, std::move(ids), {e},
                       "a " + std::string(to_string(kos.kind())) + " does not use " +
                           to_string(e.rtype) + " relations (" + edge_text(e) + ")",
                       std::nullopt});
    }
    sort_findings(out);
    return out;
}

std::size_t HierarchyView::edge_count() const {
    std::size_t n = 0;
    for (const auto& p : parents) n += p.size();
    return n;
}

HierarchyView hierarchy_view(const Kos& kos, const std::set<RelationType>& types) {
    HierarchyView view;
    view.node_count = kos.size();
    view.parents.resize(kos.size());
    view.children.resize(kos.size());
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const auto s = kos.source_index(i);
        const auto t = kos.target_index(i);
        if (s == npos || t == npos || !types.count(kos.edges()[i].rtype)) continue;
        view.parents[s].push_back(t);
    }
    for (std::size_t s = 0; s < view.node_count; ++s) {
        auto& ps = view.parents[s];
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        for (auto t : ps) view.children[t].push_back(s);
    }
    return view;
}

HierarchyView generalization_view(const Kos& kos, const ViewOptions& options) {
    std::set<RelationType> types{kBroader, kHyponymy};
    if (options.include_meronymy) types.insert(kMeronymy);
    if (options.include_instances) types.insert(kInstanceOf);
    return hierarchy_view(kos, types);
}

namespace {

template <typename Accept>
std::optional<std::size_t> bfs_distance(const Kos& kos, std::string_view a, std::string_view b,
                                        Accept accept) {
    const auto from = kos.index_of(a);
    const auto to = kos.index_of(b);
    if (from == npos) throw KosError("unknown concept id '" + std::string(a) + "'");
    if (to == npos) throw KosError("unknown concept id '" + std::string(b) + "'");
    if (from == to) return 0;

    std::vector<std::vector<std::size_t>> adj(kos.size());
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const auto s = kos.source_index(i);
        const auto t = kos.target_index(i);
        if (s == npos || t == npos || !accept(kos.edges()[i].rtype)) continue;
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    std::vector<std::size_t> dist(kos.size(), npos);
    std::deque<std::size_t> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto w : adj[v]) {
            if (dist[w] != npos) continue;
            dist[w] = dist[v] + 1;
            if (w == to) return dist[w];
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::size_t> shortest_path_length(const Kos& kos, std::string_view a,
                                                std::string_view b,
                                                const std::set<RelationType>& edge_filter) {
    return bfs_distance(kos, a, b,
                        [&](const RelationType& t) { return edge_filter.count(t) > 0; });
}

std::optional<std::size_t> shortest_path_length(const Kos& kos, std::string_view a,
                                                std::string_view b) {
    return bfs_distance(kos, a, b, [](const RelationType&) { return true; });
}

}  // namespace kosq
