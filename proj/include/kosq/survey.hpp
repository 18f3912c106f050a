#pragma once
// SERVQUAL-style difference scores: Q = perception - expectation.

#include <map>
#include <string>
#include <vector>

#include "kosq/ingest.hpp"

namespace kosq {

int q_score(const SurveyResponse& response);

struct QScoreReport {
    std::map<std::string, double> per_item;
    std::map<std::string, double> per_dimension;
    std::map<std::string, std::size_t> responses_per_dimension;
    double overall = 0;
    std::size_t n_respondents = 0;
    std::size_t n_responses = 0;

    friend bool operator==(const QScoreReport&, const QScoreReport&) = default;
};

// Unweighted means of Q by item, by dimension and overall. Throws KosError on
// an empty list.
QScoreReport aggregate(const std::vector<SurveyResponse>& responses);

}  // namespace kosq
