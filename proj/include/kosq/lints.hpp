#pragma once
// Semantic quality checks (circularity, skipping, redundancy, semantic
// inconsistency, tennis problem) and completeness estimates.

#include <string>
#include <utility>
#include <vector>

#include "kosq/core.hpp"

namespace kosq {

inline constexpr std::size_t kDefaultTennisDistance = 4;

// One finding per strongly connected component of size >= 2 in the
// generalization view, plus one per self-loop.
std::vector<LintFinding> detect_circularity(const Kos& kos, const ViewOptions& view = {});

// Hierarchy edges (a -> b) that are also implied by a longer path a -> ... -> b.
// Throws CycleError on a cyclic view.
std::vector<LintFinding> detect_skipping(const Kos& kos, const ViewOptions& view = {});

// Label collisions: shared normalized preferred labels (error) and preferred
// labels reused as another concept's alt label (warning).
std::vector<LintFinding> detect_redundancy(const Kos& kos);

// Property conflicts under inheritance along hyponymy, unspecified hierarchy
// and instance-of edges. Throws CycleError when those edges form a cycle.
std::vector<LintFinding> detect_semantic_inconsistency(const Kos& kos);

using ConceptPair = std::pair<ConceptId, ConceptId>;

// Pairs farther apart than `max_distance` (over all edge types) and without a
// direct association edge. Throws KosError on unknown ids.
std::vector<LintFinding> detect_tennis(const Kos& kos, const std::vector<ConceptPair>& pairs,
                                       std::size_t max_distance = kDefaultTennisDistance);

// Tokens shared by more labels than this say little about relatedness and
// would make the pair list quadratic; they are skipped like stopwords.
inline constexpr std::size_t kMaxSuggestionGroup = 50;

// Distinct concepts whose labels share a content token (length >= 3, not a
// stopword). Pairs are (smaller id, larger id), sorted.
std::vector<ConceptPair> suggest_related_pairs(const Kos& kos);

struct CompletenessEstimate {
    std::size_t present = 0;
    std::size_t missing = 0;
    double coverage = 0;
    double missing_share = 0;

    friend bool operator==(const CompletenessEstimate&, const CompletenessEstimate&) = default;
};

// Throws KosError when present + missing == 0.
CompletenessEstimate completeness_ratio(std::size_t present, std::size_t missing);

struct CorpusCoverage {
    double recall_like = 0;
    double precision_like = 0;
    std::vector<std::string> missing_terms;  // in the corpus, not in the KOS
    std::vector<std::string> surplus_terms;  // in the KOS, not in the corpus

    friend bool operator==(const CorpusCoverage&, const CorpusCoverage&) = default;
};

// Compares normalized corpus terms with the KOS's normalized preferred and
// alt labels. Throws KosError on an empty vocabulary.
CorpusCoverage corpus_coverage(const Kos& kos, const std::vector<std::string>& corpus_vocab);

}  // namespace kosq
