#include "kosq/survey.hpp"

#include <set>

namespace kosq {

int q_score(const SurveyResponse& response) { return response.perception - response.expectation; }

QScoreReport aggregate(const std::vector<SurveyResponse>& responses) {
    if (responses.empty()) throw KosError("no survey responses");
    QScoreReport r;
    std::map<std::string, std::pair<long, std::size_t>> items, dims;  // sum, count
    std::set<std::string> respondents;
    long total = 0;
    for (const auto& resp : responses) {
        const int q = q_score(resp);
        auto& it = items[resp.item];
        it.first += q;
        ++it.second;
        auto& d = dims[resp.dimension];
        d.first += q;
        ++d.second;
        total += q;
        respondents.insert(resp.respondent);
    }
    for (const auto& [item, sc] : items)
        r.per_item[item] = static_cast<double>(sc.first) / static_cast<double>(sc.second);
    for (const auto& [dim, sc] : dims) {
        r.per_dimension[dim] = static_cast<double>(sc.first) / static_cast<double>(sc.second);
        r.responses_per_dimension[dim] = sc.second;
    }
    r.n_responses = responses.size();
    r.overall = static_cast<double>(total) / static_cast<double>(responses.size());
    r.n_respondents = respondents.size();
    return r;
}

}  // namespace kosq
