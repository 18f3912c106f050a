#include "kosq/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#include "json.hpp"

namespace kosq {

using nlohmann::json;

namespace {

int severity_rank(Severity s) { return static_cast<int>(s); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

RelationType relation_type_from(std::string_view s) {
    constexpr std::string_view custom = "custom:";
    if (s.substr(0, custom.size()) == custom)
        return RelationType{RelationKind::Custom, std::string(s.substr(custom.size()))};
    for (auto k : {RelationKind::HierarchyUnspecified, RelationKind::Hyponymy,
                   RelationKind::Meronymy, RelationKind::InstanceOf, RelationKind::Association,
                   RelationKind::GenIdentity}) {
        if (to_string(k) == s) return RelationType{k, {}};
    }
    throw KosError("unknown relation type '" + std::string(s) + "'");
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

json to_json(const RelationEdge& e) {
    return {{"source", e.source}, {"target", e.target}, {"rtype", to_string(e.rtype)}};
}

json to_json(const LintFinding& f) {
    json j{{"check", f.check},
           {"severity", std::string(to_string(f.severity))},
           {"concepts", f.concepts},
           {"edges", json::array()},
           {"explanation", f.explanation}};
    for (const auto& e : f.edges) j["edges"].push_back(to_json(e));
    put_optional(j, "evidence", f.evidence);
    return j;
}

LintFinding finding_from(const json& j) {
    LintFinding f;
    f.check = j.at("check").get<std::string>();
    auto sev = parse_severity(j.at("severity").get<std::string>());
    if (!sev) throw KosError("unknown severity in report");
    f.severity = *sev;
    f.concepts = j.at("concepts").get<std::vector<ConceptId>>();
    for (const auto& e : j.at("edges"))
        f.edges.push_back({e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                           relation_type_from(e.at("rtype").get<std::string>())});
    f.explanation = j.at("explanation").get<std::string>();
    f.evidence = get_optional<std::string>(j, "evidence");
    return f;
}

json to_json(const StructureReport& s) {
    json j{{"concept_count", s.concept_count},
           {"relation_count", s.relation_count},
           {"expressiveness", s.expressiveness},
           {"mean_relations_per_concept", s.mean_relations_per_concept},
           {"mean_denotations", s.mean_denotations},
           {"fan_out", s.fan_out},
           {"groundedness", s.groundedness},
           {"tangledness", s.tangledness},
           {"tangledness_nonroot", s.tangledness_nonroot},
           {"siblinghood", s.siblinghood},
           {"notes", s.notes}};
    put_optional(j, "docs_per_concept", s.docs_per_concept);
    put_optional(j, "depth", s.depth);
    put_optional(j, "precombination", s.precombination);
    put_optional(j, "tree_balance", s.tree_balance);
    if (s.level_distribution) {
        json dist = json::object();
        for (const auto& [level, count] : *s.level_distribution)
            dist[std::to_string(level)] = count;
        j["level_distribution"] = dist;
    }
    return j;
}

StructureReport structure_from(const json& j) {
    StructureReport s;
    s.concept_count = j.at("concept_count").get<std::size_t>();
    s.relation_count = j.at("relation_count").get<std::size_t>();
    s.expressiveness = j.at("expressiveness").get<std::size_t>();
    s.mean_relations_per_concept = j.at("mean_relations_per_concept").get<double>();
    s.mean_denotations = j.at("mean_denotations").get<double>();
    s.fan_out = j.at("fan_out").get<double>();
    s.groundedness = j.at("groundedness").get<double>();
    s.tangledness = j.at("tangledness").get<double>();
    s.tangledness_nonroot = j.at("tangledness_nonroot").get<double>();
    s.siblinghood = j.at("siblinghood").get<double>();
    s.notes = j.at("notes").get<std::vector<std::string>>();
    s.docs_per_concept = get_optional<double>(j, "docs_per_concept");
    s.depth = get_optional<std::size_t>(j, "depth");
    s.precombination = get_optional<double>(j, "precombination");
    s.tree_balance = get_optional<double>(j, "tree_balance");
    if (j.contains("level_distribution")) {
        std::map<std::size_t, std::size_t> dist;
        for (const auto& [level, count] : j.at("level_distribution").items())
            dist[std::stoul(level)] = count.get<std::size_t>();
        s.level_distribution = std::move(dist);
    }
    return s;
}

json to_json(const CoverageReport& c) {
    return {{"recall_like", c.coverage.recall_like},
            {"precision_like", c.coverage.precision_like},
            {"missing_terms", c.coverage.missing_terms},
            {"surplus_terms", c.coverage.surplus_terms},
            {"present", c.completeness.present},
            {"missing", c.completeness.missing},
            {"coverage", c.completeness.coverage},
            {"missing_share", c.completeness.missing_share}};
}

CoverageReport coverage_from(const json& j) {
    CoverageReport c;
    c.coverage.recall_like = j.at("recall_like").get<double>();
    c.coverage.precision_like = j.at("precision_like").get<double>();
    c.coverage.missing_terms = j.at("missing_terms").get<std::vector<std::string>>();
    c.coverage.surplus_terms = j.at("surplus_terms").get<std::vector<std::string>>();
    c.completeness.present = j.at("present").get<std::size_t>();
    c.completeness.missing = j.at("missing").get<std::size_t>();
    c.completeness.coverage = j.at("coverage").get<double>();
    c.completeness.missing_share = j.at("missing_share").get<double>();
    return c;
}

json to_json(const OverlapReport& o) {
    json j{{"vocab_jaccard", o.vocab_jaccard},
           {"docs_compared", o.docs_compared},
           {"matched_pairs", json::array()},
           {"per_doc", json::array()},
           {"notes", o.notes}};
    for (const auto& m : o.matched_pairs)
        j["matched_pairs"].push_back(
            {{"label_a", m.label_a}, {"label_b", m.label_b}, {"distance", m.distance}});
    for (const auto& d : o.per_doc)
        j["per_doc"].push_back(
            {{"doc_id", d.doc_id}, {"g", d.g}, {"a", d.a}, {"b", d.b}, {"cosine", d.cosine}});
    put_optional(j, "mean_cosine", o.mean_cosine);
    return j;
}

OverlapReport overlap_from(const json& j) {
    OverlapReport o;
    o.vocab_jaccard = j.at("vocab_jaccard").get<double>();
    o.docs_compared = j.at("docs_compared").get<std::size_t>();
    o.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& m : j.at("matched_pairs"))
        o.matched_pairs.push_back({m.at("label_a").get<std::string>(),
                                   m.at("label_b").get<std::string>(),
                                   m.at("distance").get<std::size_t>()});
    for (const auto& d : j.at("per_doc"))
        o.per_doc.push_back({d.at("doc_id").get<std::string>(), d.at("g").get<std::size_t>(),
                             d.at("a").get<std::size_t>(), d.at("b").get<std::size_t>(),
                             d.at("cosine").get<double>()});
    o.mean_cosine = get_optional<double>(j, "mean_cosine");
    return o;
}

json to_json(const QScoreReport& q) {
    return {{"per_item", q.per_item},
            {"per_dimension", q.per_dimension},
            {"responses_per_dimension", q.responses_per_dimension},
            {"overall", q.overall},
            {"n_respondents", q.n_respondents},
            {"n_responses", q.n_responses}};
}

QScoreReport survey_from(const json& j) {
    QScoreReport q;
    q.per_item = j.at("per_item").get<std::map<std::string, double>>();
    q.per_dimension = j.at("per_dimension").get<std::map<std::string, double>>();
    q.responses_per_dimension =
        j.at("responses_per_dimension").get<std::map<std::string, std::size_t>>();
    q.overall = j.at("overall").get<double>();
    q.n_respondents = j.at("n_respondents").get<std::size_t>();
    q.n_responses = j.at("n_responses").get<std::size_t>();
    return q;
}

std::map<Severity, std::size_t> severity_counts(const std::vector<LintFinding>& findings) {
    std::map<Severity, std::size_t> counts{
        {Severity::Error, 0}, {Severity::Warning, 0}, {Severity::Info, 0}};
    for (const auto& f : findings) ++counts[f.severity];
    return counts;
}

std::string render_json(const AnalysisReport& r) {
    json j{{"schema_version", kReportSchemaVersion},
           {"tool", {{"name", "kosq"}, {"version", r.tool_version}}},
           {"command", r.command},
           {"kos_name", r.kos_name},
           {"findings", json::array()}};
    put_optional(j, "timestamp", r.timestamp);
    for (const auto& f : r.findings) j["findings"].push_back(to_json(f));
    json summary;
    for (const auto& [sev, n] : severity_counts(r.findings))
        summary[std::string(to_string(sev))] = n;
    j["summary"] = summary;
    if (r.structure) j["structure"] = to_json(*r.structure);
    if (r.completeness) j["completeness"] = to_json(*r.completeness);
    if (r.overlap) j["overlap"] = to_json(*r.overlap);
    if (r.survey) j["survey"] = to_json(*r.survey);
    return j.dump(2) + "\n";
}

// Shared layout for markdown and plain text.
class Writer {
public:
    explicit Writer(bool markdown) : md_(markdown) {}

    void heading(int level, const std::string& title) {
        if (md_) {
            out_ << std::string(static_cast<std::size_t>(level), '#') << ' ' << title << "\n\n";
        } else {
            out_ << title << '\n'
                 << std::string(title.size(), level == 1 ? '=' : '-') << "\n\n";
        }
    }
    void line(const std::string& s) { out_ << s << '\n'; }
    void blank() { out_ << '\n'; }
    std::string quote(const std::string& s) const { return md_ ? "`" + s + "`" : s; }
    void table(const std::vector<std::pair<std::string, std::string>>& rows,
               const char* key_header, const char* value_header) {
        if (md_) {
            out_ << "| " << key_header << " | " << value_header << " |\n|---|---|\n";
            for (const auto& [k, v] : rows) out_ << "| " << k << " | " << v << " |\n";
        } else {
            std::size_t width = 0;
            for (const auto& [k, v] : rows) width = std::max(width, k.size());
            for (const auto& [k, v] : rows)
                out_ << "  " << k << std::string(width - k.size() + 2, ' ') << v << '\n';
        }
        out_ << '\n';
    }
    void evidence(const std::string& s) {
        if (md_) {
            out_ << "\n  ```\n  " << s << "\n  ```\n";
        } else {
            out_ << "      evidence: " << s << '\n';
        }
    }
    bool markdown() const { return md_; }
    std::string str() const { return out_.str(); }

private:
    bool md_;
    std::ostringstream out_;
};

void write_structure(Writer& w, const StructureReport& s) {
    w.heading(2, "Structure");
    std::vector<std::pair<std::string, std::string>> rows{
        {"concepts", std::to_string(s.concept_count)},
        {"relations", std::to_string(s.relation_count)},
        {"semantic expressiveness", std::to_string(s.expressiveness)},
        {"mean relations per concept", fmt(s.mean_relations_per_concept)},
        {"denotations per concept", fmt(s.mean_denotations)},
    };
    if (s.docs_per_concept) rows.emplace_back("documents per concept", fmt(*s.docs_per_concept));
    if (s.depth) rows.emplace_back("hierarchy levels", std::to_string(*s.depth));
    if (s.level_distribution) {
        std::string dist;
        for (const auto& [level, count] : *s.level_distribution)
            dist += (dist.empty() ? "" : ", ") + std::to_string(level) + ": " +
                    std::to_string(count);
        rows.emplace_back("concepts per level", dist.empty() ? "-" : dist);
    }
    rows.emplace_back("fan-out factor", fmt(s.fan_out));
    rows.emplace_back("groundedness factor", fmt(s.groundedness));
    rows.emplace_back("tangledness factor", fmt(s.tangledness));
    rows.emplace_back("tangledness (non-top concepts)", fmt(s.tangledness_nonroot));
    rows.emplace_back("siblinghood factor", fmt(s.siblinghood));
    if (s.precombination) rows.emplace_back("degree of precombination", fmt(*s.precombination));
    if (s.tree_balance) rows.emplace_back("tree balance", fmt(*s.tree_balance));
    w.table(rows, "Measure", "Value");
    for (const auto& n : s.notes) w.line((w.markdown() ? "> " : "note: ") + n);
    if (!s.notes.empty()) w.blank();
}

void write_findings(Writer& w, const std::vector<LintFinding>& findings) {
    w.heading(2, "Findings");
    if (findings.empty()) {
        w.line(w.markdown() ? "_no findings_" : "no findings");
        w.blank();
        return;
    }
    const auto counts = severity_counts(findings);
    w.line(std::to_string(counts.at(Severity::Error)) + " error(s), " +
           std::to_string(counts.at(Severity::Warning)) + " warning(s), " +
           std::to_string(counts.at(Severity::Info)) + " info");
    w.blank();
    std::map<std::string, std::vector<const LintFinding*>> by_check;
    for (const auto& f : findings) by_check[f.check].push_back(&f);
    for (const auto& [check, group] : by_check) {
        w.heading(3, check + " (" + std::to_string(group.size()) + ")");
        for (const auto* f : group) {
            std::string ids;
            for (const auto& id : f->concepts) ids += (ids.empty() ? "" : ", ") + w.quote(id);
            std::string head = w.markdown()
                                   ? "- **" + std::string(to_string(f->severity)) + "**"
                                   : "  [" + std::string(to_string(f->severity)) + "]";
            if (!ids.empty()) head += " " + ids + ":";
            w.line(head + " " + f->explanation);
            if (f->evidence) w.evidence(*f->evidence);
        }
        w.blank();
    }
}

void write_completeness(Writer& w, const CoverageReport& c) {
    w.heading(2, "Completeness");
    w.table({{"corpus terms found in the KOS (recall-like)", fmt(c.coverage.recall_like)},
             {"KOS terms found in the corpus (precision-like)", fmt(c.coverage.precision_like)},
             {"present terms", std::to_string(c.completeness.present)},
             {"missing terms", std::to_string(c.completeness.missing)},
             {"coverage", fmt(c.completeness.coverage)},
             {"missing share", fmt(c.completeness.missing_share)}},
            "Measure", "Value");
    w.line((w.markdown() ? "> " : "note: ") +
           std::string("the missing share is missing / (present + missing); it is sometimes "
                       "called the completeness or recall estimate, although it measures the "
                       "gap. Coverage is its complement."));
    w.blank();
    auto list = [&](const char* title, const std::vector<std::string>& terms) {
        if (terms.empty()) return;
        w.heading(3, title);
        for (const auto& t : terms) w.line((w.markdown() ? "- " : "  ") + t);
        w.blank();
    };
    list("Missing terms", c.coverage.missing_terms);
    list("Surplus terms", c.coverage.surplus_terms);
}

void write_overlap(Writer& w, const OverlapReport& o) {
    w.heading(2, "Overlap");
    std::vector<std::pair<std::string, std::string>> rows{
        {"matched labels", std::to_string(o.matched_pairs.size())},
        {"vocabulary jaccard", fmt(o.vocab_jaccard)},
        {"documents compared", std::to_string(o.docs_compared)}};
    if (o.mean_cosine) rows.emplace_back("mean cosine", fmt(*o.mean_cosine));
    w.table(rows, "Measure", "Value");
    if (!o.matched_pairs.empty()) {
        w.heading(3, "Matched labels");
        std::vector<std::pair<std::string, std::string>> m;
        for (const auto& p : o.matched_pairs)
            m.emplace_back(p.label_a + " / " + p.label_b, std::to_string(p.distance));
        w.table(m, "Labels", "Distance");
    }
    if (!o.per_doc.empty()) {
        w.heading(3, "Per document");
        std::vector<std::pair<std::string, std::string>> d;
        for (const auto& p : o.per_doc)
            d.emplace_back(p.doc_id, "g=" + std::to_string(p.g) + " a=" + std::to_string(p.a) +
                                         " b=" + std::to_string(p.b) + " cosine=" + fmt(p.cosine));
        w.table(d, "Document", "Overlap");
    }
    for (const auto& n : o.notes) w.line((w.markdown() ? "> " : "note: ") + n);
    if (!o.notes.empty()) w.blank();
}

void write_survey(Writer& w, const QScoreReport& q) {
    w.heading(2, "Survey (Q = PE - EX)");
    w.table({{"respondents", std::to_string(q.n_respondents)},
             {"responses", std::to_string(q.n_responses)},
             {"overall mean Q", fmt(q.overall)}},
            "Measure", "Value");
    std::vector<std::pair<std::string, std::string>> dims, items;
    for (const auto& [k, v] : q.per_dimension) dims.emplace_back(k, fmt(v));
    for (const auto& [k, v] : q.per_item) items.emplace_back(k, fmt(v));
    w.heading(3, "Per dimension");
    w.table(dims, "Dimension", "Mean Q");
    w.heading(3, "Per item");
    w.table(items, "Item", "Mean Q");
}

std::string render_document(const AnalysisReport& r, bool markdown) {
    Writer w(markdown);
    w.heading(1, "kosq " + r.command + (r.kos_name.empty() ? "" : ": " + r.kos_name));
    w.line("tool version " + r.tool_version + (r.timestamp ? ", generated " + *r.timestamp : ""));
    w.blank();
    if (r.structure) write_structure(w, *r.structure);
    if (r.command == "analyze" || !r.findings.empty()) write_findings(w, r.findings);
    if (r.completeness) write_completeness(w, *r.completeness);
    if (r.overlap) write_overlap(w, *r.overlap);
    if (r.survey) write_survey(w, *r.survey);
    return w.str();
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "markdown" || s == "md") return OutputFormat::Markdown;
    if (s == "text") return OutputFormat::Text;
    return std::nullopt;
}

void sort_report_findings(std::vector<LintFinding>& findings) {
    std::stable_sort(findings.begin(), findings.end(),
                     [](const LintFinding& a, const LintFinding& b) {
                         const auto ka = a.concepts.empty() ? std::string() : a.concepts.front();
                         const auto kb = b.concepts.empty() ? std::string() : b.concepts.front();
                         const int ra = severity_rank(a.severity);
                         const int rb = severity_rank(b.severity);
                         return std::tie(ra, a.check, ka) < std::tie(rb, b.check, kb);
                     });
}

void promote_warnings(std::vector<LintFinding>& findings) {
    for (auto& f : findings)
        if (f.severity == Severity::Warning) f.severity = Severity::Error;
}

int exit_code_for(const std::vector<LintFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const auto& f) { return f.severity == Severity::Error; })
               ? 1
               : 0;
}

std::string render(const AnalysisReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return render_json(report);
        case OutputFormat::Markdown: return render_document(report, true);
        case OutputFormat::Text: return render_document(report, false);
    }
    return {};
}

AnalysisReport report_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        if (j.at("schema_version").get<int>() != kReportSchemaVersion)
            throw KosError("unsupported report schema version");
        AnalysisReport r;
        r.command = j.at("command").get<std::string>();
        r.kos_name = j.at("kos_name").get<std::string>();
        r.tool_version = j.at("tool").at("version").get<std::string>();
        r.timestamp = get_optional<std::string>(j, "timestamp");
        for (const auto& f : j.at("findings")) r.findings.push_back(finding_from(f));
        if (j.contains("structure")) r.structure = structure_from(j.at("structure"));
        if (j.contains("completeness")) r.completeness = coverage_from(j.at("completeness"));
        if (j.contains("overlap")) r.overlap = overlap_from(j.at("overlap"));
        if (j.contains("survey")) r.survey = survey_from(j.at("survey"));
        return r;
    } catch (const json::exception& e) {
        throw KosError(std::string("malformed report json: ") + e.what());
    }
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace kosq
