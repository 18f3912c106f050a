#pragma once
// Text formats: native KOS records, a SKOS/Turtle subset, indexed corpora,
// vocabulary lists, survey responses and related-pair lists.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kosq/core.hpp"

namespace kosq {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string snippet);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::string& snippet() const { return snippet_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string snippet_;
};

// A parsed value plus the non-fatal findings raised while loading it.
template <typename T>
struct Loaded {
    T value;
    std::vector<LintFinding> findings;
};

struct NativeOptions {
    std::string name;
    // When false, relation values that match no record are ParseErrors.
    bool implicit_concepts = true;
};

// Native record format:
//
//   KOS-KIND: thesaurus
//
//   TERM: Fishes
//   BT: Marine animals
//   NT: Salt-water fishes
//
// See README for the full key list.
Loaded<Kos> parse_native(std::string_view source, const NativeOptions& options = {});

// Canonical text: header, then one record per concept in id order.
std::string serialize_native(const Kos& kos);

// Default concept id for a TERM without an ID line.
ConceptId derive_id(std::string_view term);

Kos parse_skos_subset(std::string_view source, std::string name = {});

struct IndexedCorpus {
    std::string kos_name;
    std::map<std::string, std::set<ConceptId>> assignments;
};

// `doc_id<TAB>c1;c2;...` per line. Ids unknown to `kos` produce findings.
Loaded<IndexedCorpus> parse_corpus(std::string_view source, const Kos& kos);

// Normalized, de-duplicated terms in first-occurrence order.
std::vector<std::string> parse_vocab_list(std::string_view source);

// `concept_id<TAB>concept_id` per line.
std::vector<std::pair<ConceptId, ConceptId>> parse_related_pairs(std::string_view source);

struct SurveyResponse {
    std::string respondent;
    std::string item;
    std::string dimension;
    int expectation = 0;
    int perception = 0;
};

struct SurveyScale {
    int min = 1;
    int max = 7;
};

struct SurveyData {
    SurveyScale scale;
    std::vector<SurveyResponse> responses;
};

// CSV `respondent_id,item_id,dimension,EX,PE` with a header row; an optional
// `# scale: MIN-MAX` line before the header overrides the 1-7 default.
SurveyData parse_survey(std::string_view source);

}  // namespace kosq
