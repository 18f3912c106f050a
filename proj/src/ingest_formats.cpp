#include <charconv>
#include <map>
#include <unordered_set>

#include "kosq/ingest.hpp"
#include "text.hpp"

namespace kosq {

namespace {

std::size_t column_of(std::string_view line, std::string_view part) {
    return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace

Loaded<IndexedCorpus> parse_corpus(std::string_view source, const Kos& kos) {
    Loaded<IndexedCorpus> out;
    out.value.kos_name = kos.name();
    std::map<std::string, std::set<std::string>> unknown;  // id -> docs

    const auto lines = text::split_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        const auto lineno = i + 1;
        if (text::trim(line).empty()) continue;
        const auto fields = text::split(line, '\t');
        if (fields.size() != 2)
            throw ParseError(lineno, 1,
                             "expected 'doc_id<TAB>concept_id;...' (got " +
                                 std::to_string(fields.size()) + " fields)",
                             text::snippet(line));
        const auto doc = text::trim(fields[0]);
        if (!is_valid_id(doc))
            throw ParseError(lineno, 1, "document id must be a non-empty token",
                             text::snippet(line));
        std::set<ConceptId> ids;
        for (auto part : text::split(fields[1], ';')) {
            const auto id = text::trim(part);
            if (id.empty())
                throw ParseError(lineno, column_of(line, part), "empty concept id in list",
                                 text::snippet(line));
            if (!is_valid_id(id))
                throw ParseError(lineno, column_of(line, part), "concept id must be a token",
                                 text::snippet(line));
            ids.emplace(id);
            if (!kos.contains(id)) unknown[std::string(id)].emplace(doc);
        }
        if (!out.value.assignments.emplace(std::string(doc), std::move(ids)).second)
            throw ParseError(lineno, 1, "duplicate document id '" + std::string(doc) + "'",
                             text::snippet(line));
    }
    for (const auto& [id, docs] : unknown) {
        out.findings.push_back(
            {"unknown_concept", Severity::Warning, {}, {},
             "corpus assigns concept '" + id + "' which is not in KOS '" + kos.name() + "' (" +
                 std::to_string(docs.size()) + " document(s), first '" + *docs.begin() + "')",
             std::nullopt});
    }
    return out;
}

std::vector<std::string> parse_vocab_list(std::string_view source) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto line : text::split_lines(source)) {
        const auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto term = normalize_label(t);
        if (seen.insert(term).second) out.push_back(std::move(term));
    }
    return out;
}

std::vector<std::pair<ConceptId, ConceptId>> parse_related_pairs(std::string_view source) {
    std::vector<std::pair<ConceptId, ConceptId>> out;
    const auto lines = text::split_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto t = text::trim(lines[i]);
        if (t.empty() || t.front() == '#') continue;
        const auto fields = text::split(t, '\t');
        if (fields.size() != 2 || !is_valid_id(text::trim(fields[0])) ||
            !is_valid_id(text::trim(fields[1])))
            throw ParseError(i + 1, 1, "expected 'concept_id<TAB>concept_id'",
                             text::snippet(lines[i]));
        out.emplace_back(text::trim(fields[0]), text::trim(fields[1]));
    }
    return out;
}

namespace {

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

SurveyData parse_survey(std::string_view source) {
    SurveyData out;
    bool header_seen = false;
    const auto lines = text::split_lines(source);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        const auto lineno = i + 1;
        const auto t = text::trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            auto body = text::trim(t.substr(1));
            if (body.substr(0, 6) != "scale:") continue;
            if (header_seen)
                throw ParseError(lineno, 1, "scale line must precede the header row",
                                 text::snippet(line));
            auto range = text::trim(body.substr(6));
            const auto dash = range.find('-', 1);
            std::optional<int> lo, hi;
            if (dash != std::string_view::npos) {
                lo = parse_int(text::trim(range.substr(0, dash)));
                hi = parse_int(text::trim(range.substr(dash + 1)));
            }
            if (!lo || !hi || *lo >= *hi)
                throw ParseError(lineno, 1, "malformed scale, expected '# scale: MIN-MAX'",
                                 text::snippet(line));
            out.scale = {*lo, *hi};
            continue;
        }
        auto fields = text::split(line, ',');
        for (auto& f : fields) f = text::trim(f);
        if (!header_seen) {
            const std::vector<std::string_view> expected{"respondent_id", "item_id", "dimension",
                                                         "EX", "PE"};
            if (fields != expected)
                throw ParseError(lineno, 1,
                                 "expected header 'respondent_id,item_id,dimension,EX,PE'",
                                 text::snippet(line));
            header_seen = true;
            continue;
        }
        if (fields.size() != 5)
            throw ParseError(lineno, 1,
                             "expected 5 comma-separated fields, got " +
                                 std::to_string(fields.size()),
                             text::snippet(line));
        for (std::size_t f = 0; f < 3; ++f) {
            if (!is_valid_id(fields[f]))
                throw ParseError(lineno, column_of(line, fields[f]),
                                 "respondent, item and dimension must be tokens",
                                 text::snippet(line));
        }
        int values[2];
        for (std::size_t f = 3; f < 5; ++f) {
            auto v = parse_int(fields[f]);
            if (!v || *v < out.scale.min || *v > out.scale.max)
                throw ParseError(lineno, column_of(line, fields[f]),
                                 std::string(f == 3 ? "EX" : "PE") + " value '" +
                                     std::string(fields[f]) + "' outside scale " +
                                     std::to_string(out.scale.min) + "-" +
                                     std::to_string(out.scale.max),
                                 text::snippet(line));
            values[f - 3] = *v;
        }
        out.responses.push_back({std::string(fields[0]), std::string(fields[1]),
                                 std::string(fields[2]), values[0], values[1]});
    }
    if (!header_seen) throw ParseError(1, 1, "missing header row", "");
    return out;
}

}  // namespace kosq
