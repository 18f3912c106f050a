#pragma once
// Basic KOS structure measures: size, granularity, hierarchy shape and
// precombination, plus mean relations per concept and tree balance.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kosq/core.hpp"
#include "kosq/ingest.hpp"

namespace kosq {

using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

// Splits on whitespace and hyphens.
std::vector<std::string> default_tokenizer(std::string_view label);

std::size_t count_concepts(const Kos& kos);
std::size_t count_relations(const Kos& kos);
std::size_t expressiveness(const Kos& kos);

// The ratio metrics below throw KosError("no concepts") on an empty KOS.
double mean_relations_per_concept(const Kos& kos);
double mean_denotations(const Kos& kos);

// Assignments to ids outside the KOS are left out of the numerator; `notes`
// (when given) receives one line about them.
double docs_per_concept(const Kos& kos, const IndexedCorpus& corpus,
                        std::vector<std::string>* notes = nullptr);

struct HierarchyLevels {
    std::map<ConceptId, std::size_t> level;
    std::size_t depth = 0;
    std::map<std::size_t, std::size_t> distribution;
};

// Longest path from a top term. Throws CycleError on a cyclic view.
HierarchyLevels hierarchy_levels(const Kos& kos, const ViewOptions& view = {});

double fan_out(const Kos& kos, const ViewOptions& view = {});
double groundedness(const Kos& kos, const ViewOptions& view = {});
double tangledness(const Kos& kos, const ViewOptions& view = {});
// Broader edges per concept that has at least one broader concept (0 if none).
double tangledness_nonroot(const Kos& kos, const ViewOptions& view = {});
// 0 when the view has no (child, parent) incidence.
double siblinghood(const Kos& kos, const ViewOptions& view = {});
double precombination(const Kos& kos, const Tokenizer& tokenizer = default_tokenizer);
// 1 / (1 + mean coefficient of variation of sibling subtree sizes).
// Throws CycleError on a cyclic view.
double tree_balance(const Kos& kos, const ViewOptions& view = {});

struct StructureReport {
    std::size_t concept_count = 0;
    std::size_t relation_count = 0;
    std::size_t expressiveness = 0;
    double mean_relations_per_concept = 0;
    double mean_denotations = 0;
    std::optional<double> docs_per_concept;
    // Absent when the generalization view is cyclic.
    std::optional<std::size_t> depth;
    std::optional<std::map<std::size_t, std::size_t>> level_distribution;
    double fan_out = 1;
    double groundedness = 1;
    double tangledness = 0;
    double tangledness_nonroot = 0;
    double siblinghood = 0;
    std::optional<double> precombination;
    std::optional<double> tree_balance;
    std::vector<std::string> notes;

    friend bool operator==(const StructureReport&, const StructureReport&) = default;
};

struct StructureOptions {
    ViewOptions view;
    Tokenizer tokenizer = default_tokenizer;
};

// Every measure at once, sharing one view and one levels pass. An empty KOS
// gives zero counts, neutral ratios and a note.
StructureReport structure_report(const Kos& kos, const StructureOptions& options = {},
                                 const IndexedCorpus* corpus = nullptr);

}  // namespace kosq
