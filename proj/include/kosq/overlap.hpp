#pragma once
// Comparing two KOSs: edit distance between labels, greedy vocabulary
// matching, and per-document cosine over a shared indexed corpus.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kosq/core.hpp"
#include "kosq/ingest.hpp"

namespace kosq {

// Edit distance over Unicode code points (insert, delete, substitute).
std::size_t levenshtein(std::string_view s1, std::string_view s2);

// Case-fold and drop '_', '-' and whitespace, so "TopHotel" == "Top_Hotel".
std::string matching_key(std::string_view label);

struct LabelMatch {
    std::string label_a;
    std::string label_b;
    std::size_t distance = 0;

    friend bool operator==(const LabelMatch&, const LabelMatch&) = default;
};

struct VocabularyMatch {
    std::vector<LabelMatch> matched_pairs;
    double vocab_jaccard = 0;
};

// Greedy one-to-one matching of preferred labels in ascending distance order
// (ties by label). Approximate: not an optimal assignment. Throws KosError
// when either KOS is empty.
VocabularyMatch match_vocabularies(const Kos& a, const Kos& b, std::size_t max_distance,
                                   bool normalize);

// Maps a concept id of one corpus to the key compared across KOSs.
using ConceptKey = std::function<std::string(const ConceptId&)>;

// Normalized preferred label of the concept in `kos`; ids outside the KOS map
// to themselves. The returned function keeps a reference to `kos`.
ConceptKey label_identity(const Kos& kos);

struct DocOverlap {
    std::string doc_id;
    std::size_t g = 0;  // shared concepts
    std::size_t a = 0;  // only in the first corpus
    std::size_t b = 0;  // only in the second corpus
    double cosine = 0;

    friend bool operator==(const DocOverlap&, const DocOverlap&) = default;
};

struct PolyrepResult {
    std::vector<DocOverlap> per_doc;
    std::optional<double> mean_cosine;  // unweighted mean over shared documents
    std::size_t docs_compared = 0;
    std::vector<std::string> notes;
};

// Compares documents present in both corpora; others are skipped.
PolyrepResult polyrep_cosine(const IndexedCorpus& a, const IndexedCorpus& b,
                             const ConceptKey& key_a, const ConceptKey& key_b);

struct OverlapReport {
    std::vector<LabelMatch> matched_pairs;
    double vocab_jaccard = 0;
    std::vector<DocOverlap> per_doc;
    std::optional<double> mean_cosine;
    std::size_t docs_compared = 0;
    std::vector<std::string> notes;

    friend bool operator==(const OverlapReport&, const OverlapReport&) = default;
};

}  // namespace kosq
