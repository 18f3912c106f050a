#include "kosq/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "text.hpp"

namespace kosq {

namespace {

// Decodes UTF-8; a byte that does not start a well-formed sequence is one unit.
std::vector<char32_t> code_points(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3
                                      : (b0 >> 3) == 0x1E ? 4 : 0;
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(s[i + k]) >> 6) == 0x2;
        if (!ok) {
            out.push_back(0x110000u + b0);  // outside the code point range
            ++i;
            continue;
        }
        char32_t cp = len == 1 ? b0 : b0 & (0x7F >> len);
        for (std::size_t k = 1; k < len; ++k)
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += len;
    }
    return out;
}

}  // namespace

std::size_t levenshtein(std::string_view s1, std::string_view s2) {
    const auto x = code_points(s1);
    const auto y = code_points(s2);
    if (x.empty()) return y.size();
    if (y.empty()) return x.size();

    std::vector<std::size_t> row(y.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i + 1;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const std::size_t up = row[j + 1];
            row[j + 1] = x[i] == y[j] ? diag : 1 + std::min({diag, up, row[j]});
            diag = up;
        }
    }
    return row.back();
}

std::string matching_key(std::string_view label) {
    std::string out;
    for (char c : normalize_label(label))
        if (c != '_' && c != '-' && c != ' ') out.push_back(c);
    return out;
}

VocabularyMatch match_vocabularies(const Kos& a, const Kos& b, std::size_t max_distance,
                                   bool normalize) {
    if (a.empty() || b.empty()) throw KosError("vocabulary matching needs two non-empty KOSs");
    auto keys = [&](const Kos& k) {
        std::vector<std::pair<std::string, std::string>> out;  // (raw, compared)
        for (const auto& c : k.concepts())
            out.emplace_back(c.preferred_label,
                             normalize ? matching_key(c.preferred_label) : c.preferred_label);
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto la = keys(a);
    const auto lb = keys(b);

    struct Candidate {
        std::size_t distance, i, j;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < la.size(); ++i) {
        const auto& ka = la[i].second;
        for (std::size_t j = 0; j < lb.size(); ++j) {
            const auto& kb = lb[j].second;
            const auto gap = ka.size() > kb.size() ? ka.size() - kb.size() : kb.size() - ka.size();
            if (max_distance == 0 && ka != kb) continue;
            // One edit changes the byte length by at most 4.
            if (gap > 4 * max_distance) continue;
            const auto d = levenshtein(ka, kb);
            if (d <= max_distance) candidates.push_back({d, i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const auto& p, const auto& q) {
        return std::tie(p.distance, la[p.i].first, lb[p.j].first, p.i, p.j) <
               std::tie(q.distance, la[q.i].first, lb[q.j].first, q.i, q.j);
    });

    VocabularyMatch out;
    std::vector<bool> used_a(la.size(), false), used_b(lb.size(), false);
    for (const auto& c : candidates) {
        if (used_a[c.i] || used_b[c.j]) continue;
        used_a[c.i] = used_b[c.j] = true;
        out.matched_pairs.push_back({la[c.i].first, lb[c.j].first, c.distance});
    }
    const double m = static_cast<double>(out.matched_pairs.size());
    out.vocab_jaccard = m / (static_cast<double>(la.size() + lb.size()) - m);
    return out;
}

ConceptKey label_identity(const Kos& kos) {
    return [&kos](const ConceptId& id) {
        const auto i = kos.index_of(id);
        return i == npos ? id : normalize_label(kos.concepts()[i].preferred_label);
    };
}

PolyrepResult polyrep_cosine(const IndexedCorpus& a, const IndexedCorpus& b,
                             const ConceptKey& key_a, const ConceptKey& key_b) {
    PolyrepResult out;
    double sum = 0;
    for (const auto& [doc, ids_a] : a.assignments) {
        auto it = b.assignments.find(doc);
        if (it == b.assignments.end()) continue;
        std::set<std::string> sa, sb;
        for (const auto& id : ids_a) sa.insert(key_a(id));
        for (const auto& id : it->second) sb.insert(key_b(id));
        std::vector<std::string> shared;
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                              std::back_inserter(shared));
        DocOverlap d{doc, shared.size(), sa.size() - shared.size(), sb.size() - shared.size(), 0};
        const double denom = std::sqrt(static_cast<double>(d.g + d.a) * static_cast<double>(d.g + d.b));
        d.cosine = denom == 0 ? 0.0 : static_cast<double>(d.g) / denom;
        sum += d.cosine;
        out.per_doc.push_back(std::move(d));
    }
    out.docs_compared = out.per_doc.size();
    if (out.docs_compared > 0) {
        out.mean_cosine = sum / static_cast<double>(out.docs_compared);
        out.notes.push_back("mean cosine is the unweighted mean over documents indexed in both "
                            "corpora");
    } else {
        out.notes.push_back("the corpora share no documents; cosine not computed");
    }
    return out;
}

}  // namespace kosq
