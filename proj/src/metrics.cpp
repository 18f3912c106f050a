#include "kosq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kosq/graph.hpp"
#include "text.hpp"

namespace kosq {

namespace {

void require_concepts(const Kos& kos) {
    if (kos.empty()) throw KosError("no concepts");
}

std::vector<std::size_t> levels_of(const HierarchyView& view, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> level(view.node_count, 0);
    for (auto v : order) {
        for (auto p : view.parents[v]) level[v] = std::max(level[v], level[p] + 1);
    }
    return level;
}

HierarchyLevels levels_from(const Kos& kos, const HierarchyView& view) {
    require_acyclic(kos, view, "hierarchy_levels");
    const auto order = *successors_first_order(view.parents);
    const auto level = levels_of(view, order);
    HierarchyLevels out;
    for (std::size_t v = 0; v < level.size(); ++v) {
        out.level.emplace(kos.concepts()[v].id, level[v]);
        ++out.distribution[level[v]];
        out.depth = std::max(out.depth, level[v] + 1);
    }
    return out;
}

std::size_t count_tops(const HierarchyView& view) {
    return static_cast<std::size_t>(std::count_if(view.parents.begin(), view.parents.end(),
                                                  [](const auto& p) { return p.empty(); }));
}

std::size_t count_bottoms(const HierarchyView& view) {
    return static_cast<std::size_t>(std::count_if(view.children.begin(), view.children.end(),
                                                  [](const auto& c) { return c.empty(); }));
}

double siblinghood_of(const HierarchyView& view) {
    double incidences = 0;
    double siblings = 0;
    for (const auto& kids : view.children) {
        const double c = static_cast<double>(kids.size());
        incidences += c;
        siblings += c * (c - 1);
    }
    return incidences == 0 ? 0.0 : siblings / incidences;
}

double tangledness_nonroot_of(const HierarchyView& view) {
    const auto nonroots = view.node_count - count_tops(view);
    return nonroots == 0 ? 0.0
                         : static_cast<double>(view.edge_count()) / static_cast<double>(nonroots);
}

// Descendant count + 1 for every node; the view must be acyclic.
std::vector<std::size_t> subtree_sizes(const HierarchyView& view) {
    const std::size_t n = view.node_count;
    std::vector<std::size_t> size(n, 1);
    const auto order = *successors_first_order(view.children);
    const bool forest = std::all_of(view.parents.begin(), view.parents.end(),
                                    [](const auto& p) { return p.size() <= 1; });
    if (forest) {
        for (auto v : order)
            for (auto c : view.children[v]) size[v] += size[c];
        return size;
    }
    for_each_reach_chunk(view.children, order, [&](const ReachChunk& chunk) {
        for (std::size_t v = 0; v < n; ++v) size[v] += chunk.count(v);
    });
    return size;
}

double tree_balance_of(const HierarchyView& view) {
    const auto size = subtree_sizes(view);
    double cv_sum = 0;
    std::size_t branching = 0;
    for (const auto& kids : view.children) {
        if (kids.size() < 2) continue;
        double mean = 0;
        for (auto c : kids) mean += static_cast<double>(size[c]);
        mean /= static_cast<double>(kids.size());
        double var = 0;
        for (auto c : kids) {
            const double d = static_cast<double>(size[c]) - mean;
            var += d * d;
        }
        var /= static_cast<double>(kids.size());
        cv_sum += std::sqrt(var) / mean;
        ++branching;
    }
    if (branching == 0) return 1.0;
    return 1.0 / (1.0 + cv_sum / static_cast<double>(branching));
}

double precombination_of(const Kos& kos, const Tokenizer& tokenizer) {
    double total = 0;
    for (const auto& c : kos.concepts())
        total += static_cast<double>(std::max<std::size_t>(1, tokenizer(c.preferred_label).size()));
    return total / static_cast<double>(kos.size());
}

}  // namespace

std::vector<std::string> default_tokenizer(std::string_view label) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : label) {
        if (text::is_space(c) || c == '-') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::size_t count_concepts(const Kos& kos) { return kos.size(); }

std::size_t count_relations(const Kos& kos) { return kos.edges().size(); }

std::size_t expressiveness(const Kos& kos) {
    std::set<RelationType> types;
    for (const auto& e : kos.edges()) types.insert(e.rtype);
    return types.size();
}

double mean_relations_per_concept(const Kos& kos) {
    require_concepts(kos);
    return 2.0 * static_cast<double>(kos.edges().size()) / static_cast<double>(kos.size());
}

double mean_denotations(const Kos& kos) {
    require_concepts(kos);
    std::size_t total = 0;
    for (const auto& c : kos.concepts()) total += c.alt_labels.size();
    return static_cast<double>(total) / static_cast<double>(kos.size());
}

double docs_per_concept(const Kos& kos, const IndexedCorpus& corpus,
                        std::vector<std::string>* notes) {
    require_concepts(kos);
    std::size_t known = 0;
    std::size_t unknown = 0;
    for (const auto& [doc, ids] : corpus.assignments) {
        for (const auto& id : ids) (kos.contains(id) ? known : unknown) += 1;
    }
    if (unknown > 0 && notes)
        notes->push_back(std::to_string(unknown) +
                         " corpus assignment(s) reference concepts outside the KOS and were "
                         "not counted in documents per concept");
    return static_cast<double>(known) / static_cast<double>(kos.size());
}

HierarchyLevels hierarchy_levels(const Kos& kos, const ViewOptions& view) {
    return levels_from(kos, generalization_view(kos, view));
}

double fan_out(const Kos& kos, const ViewOptions& view) {
    require_concepts(kos);
    return static_cast<double>(count_tops(generalization_view(kos, view))) /
           static_cast<double>(kos.size());
}

double groundedness(const Kos& kos, const ViewOptions& view) {
    require_concepts(kos);
    return static_cast<double>(count_bottoms(generalization_view(kos, view))) /
           static_cast<double>(kos.size());
}

double tangledness(const Kos& kos, const ViewOptions& view) {
    require_concepts(kos);
    return static_cast<double>(generalization_view(kos, view).edge_count()) /
           static_cast<double>(kos.size());
}

double tangledness_nonroot(const Kos& kos, const ViewOptions& view) {
    require_concepts(kos);
    return tangledness_nonroot_of(generalization_view(kos, view));
}

double siblinghood(const Kos& kos, const ViewOptions& view) {
    return siblinghood_of(generalization_view(kos, view));
}

double precombination(const Kos& kos, const Tokenizer& tokenizer) {
    require_concepts(kos);
    return precombination_of(kos, tokenizer);
}

double tree_balance(const Kos& kos, const ViewOptions& view) {
    const auto v = generalization_view(kos, view);
    require_acyclic(kos, v, "tree_balance");
    return tree_balance_of(v);
}

StructureReport structure_report(const Kos& kos, const StructureOptions& options,
                                 const IndexedCorpus* corpus) {
    StructureReport r;
    r.concept_count = count_concepts(kos);
    r.relation_count = count_relations(kos);
    r.expressiveness = expressiveness(kos);
    if (kos.empty()) {
        r.depth = 0;
        r.level_distribution.emplace();
        r.tree_balance = 1.0;
        r.notes.push_back("the KOS has no concepts; ratio measures are not defined");
        return r;
    }
    const double n = static_cast<double>(kos.size());
    r.mean_relations_per_concept = mean_relations_per_concept(kos);
    r.mean_denotations = mean_denotations(kos);
    if (corpus) r.docs_per_concept = docs_per_concept(kos, *corpus, &r.notes);

    const auto view = generalization_view(kos, options.view);
    r.fan_out = static_cast<double>(count_tops(view)) / n;
    r.groundedness = static_cast<double>(count_bottoms(view)) / n;
    r.tangledness = static_cast<double>(view.edge_count()) / n;
    r.tangledness_nonroot = tangledness_nonroot_of(view);
    r.siblinghood = siblinghood_of(view);
    if (view.edge_count() == 0)
        r.notes.push_back("no hierarchy edges; siblinghood is defined as 0");
    r.precombination = precombination_of(kos, options.tokenizer);

    if (auto order = successors_first_order(view.parents)) {
        const auto level = levels_of(view, *order);
        std::size_t depth = 0;
        std::map<std::size_t, std::size_t> dist;
        for (auto l : level) {
            ++dist[l];
            depth = std::max(depth, l + 1);
        }
        r.depth = depth;
        r.level_distribution = std::move(dist);
        r.tree_balance = tree_balance_of(view);
    } else {
        r.notes.push_back(
            "the hierarchy contains a cycle; depth, level distribution and tree balance omitted");
    }
    return r;
}

}  // namespace kosq
