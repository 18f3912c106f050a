#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "kosq/ingest.hpp"
#include "text.hpp"

namespace kosq {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message,
                       std::string snippet)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message + (snippet.empty() ? "" : " (near '" + snippet + "')")),
      line_(line), column_(column), message_(std::move(message)), snippet_(std::move(snippet)) {}

ConceptId derive_id(std::string_view term) {
    std::string id = normalize_label(term);
    std::replace(id.begin(), id.end(), ' ', '_');
    std::replace(id.begin(), id.end(), ';', '_');
    return id;
}

namespace {

enum class Direction { Forward, Backward };

struct RelationLine {
    RelationType rtype;
    Direction direction;
    std::string value;
    std::size_t line;
    std::size_t column;
    std::string text;
};

struct Record {
    std::string term;
    std::optional<std::string> id;
    std::size_t line = 0;
    std::size_t id_line = 0;
    std::vector<std::string> alt_labels;
    bool is_instance = false;
    std::set<std::string> props;
    std::set<std::string> not_props;
    std::vector<RelationLine> relations;
};

struct KeySpec {
    RelationType rtype;
    Direction direction;
};

std::optional<KeySpec> relation_key(std::string_view key) {
    if (key == "BT") return KeySpec{kBroader, Direction::Forward};
    if (key == "NT") return KeySpec{kBroader, Direction::Backward};
    if (key == "BTG") return KeySpec{kHyponymy, Direction::Forward};
    if (key == "NTG") return KeySpec{kHyponymy, Direction::Backward};
    if (key == "BTP") return KeySpec{kMeronymy, Direction::Forward};
    if (key == "NTP") return KeySpec{kMeronymy, Direction::Backward};
    if (key == "INST-OF") return KeySpec{kInstanceOf, Direction::Forward};
    if (key == "RT") return KeySpec{kAssociation, Direction::Forward};
    if (key == "GEN-ID") return KeySpec{kGenIdentity, Direction::Forward};
    return std::nullopt;
}

std::string relation_key(const RelationType& t) {
    switch (t.kind) {
        case RelationKind::HierarchyUnspecified: return "BT";
        case RelationKind::Hyponymy: return "BTG";
        case RelationKind::Meronymy: return "BTP";
        case RelationKind::InstanceOf: return "INST-OF";
        case RelationKind::Association: return "RT";
        case RelationKind::GenIdentity: return "GEN-ID";
        case RelationKind::Custom: return "REL " + t.custom_name;
    }
    return "?";
}

class NativeParser {
public:
    NativeParser(std::string_view source, const NativeOptions& options)
        : source_(source), options_(options) {}

    Loaded<Kos> run() {
        read_records();
        return build();
    }

private:
    [[noreturn]] void fail(std::size_t line, std::size_t column, std::string message,
                           std::string_view text) const {
        throw ParseError(line, column, std::move(message), text::snippet(text));
    }

    void read_records() {
        const auto lines = text::split_lines(source_);
        bool in_record = false;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const std::size_t lineno = i + 1;
            const std::string_view raw = lines[i];
            const std::string_view line = text::trim(raw);
            if (line.empty()) {
                in_record = false;
                continue;
            }
            if (line.front() == '#') continue;

            const auto colon = line.find(':');
            if (colon == std::string_view::npos)
                fail(lineno, 1, "expected 'KEY: value'", raw);
            const std::string_view key = text::trim(line.substr(0, colon));
            const std::string_view value = text::trim(line.substr(colon + 1));
            const std::size_t value_col =
                static_cast<std::size_t>(value.data() - raw.data()) + 1;

            if (key == "KOS-KIND") {
                if (in_record || !records_.empty() || kind_)
                    fail(lineno, 1, "KOS-KIND header must be the first line", raw);
                kind_ = parse_kos_kind(normalize_label(value));
                if (!kind_) fail(lineno, value_col, "malformed header: unknown KOS kind", raw);
                continue;
            }
            if (key == "TERM") {
                if (in_record)
                    fail(lineno, 1, "second TERM in one record (missing blank line?)", raw);
                if (value.empty()) fail(lineno, value_col, "TERM has no value", raw);
                records_.push_back(Record{});
                records_.back().term = std::string(value);
                records_.back().line = lineno;
                in_record = true;
                continue;
            }
            if (!in_record)
                fail(lineno, 1, "record does not start with TERM (key '" + std::string(key) + "')",
                     raw);
            if (value.empty())
                fail(lineno, value_col, "key '" + std::string(key) + "' has no value", raw);
            add_field(records_.back(), key, value, lineno, value_col, raw);
        }
    }

    void add_field(Record& rec, std::string_view key, std::string_view value, std::size_t lineno,
                   std::size_t col, std::string_view raw) {
        if (auto spec = relation_key(key)) {
            rec.relations.push_back(
                {spec->rtype, spec->direction, std::string(value), lineno, col, std::string(raw)});
            return;
        }
        if (key.substr(0, 4) == "REL " || key.substr(0, 4) == "REL\t") {
            const auto name = text::trim(key.substr(4));
            if (!is_valid_id(name)) fail(lineno, 1, "malformed custom relation name", raw);
            rec.relations.push_back({RelationType{RelationKind::Custom, std::string(name)},
                                     Direction::Forward, std::string(value), lineno, col,
                                     std::string(raw)});
            return;
        }
        if (key == "ID") {
            if (rec.id) fail(lineno, 1, "second ID in record", raw);
            if (!is_valid_id(value))
                fail(lineno, col, "ID must be a token without whitespace or ';'", raw);
            rec.id = std::string(value);
            rec.id_line = lineno;
        } else if (key == "UF") {
            if (normalize_label(value) == normalize_label(rec.term))
                fail(lineno, col, "UF repeats the record's TERM", raw);
            rec.alt_labels.emplace_back(value);
        } else if (key == "PROP" || key == "NOT-PROP") {
            if (!is_valid_id(value)) fail(lineno, col, "property must be a token", raw);
            const std::string p(value);
            const bool negated = key == "NOT-PROP";
            if ((negated ? rec.props : rec.not_props).count(p))
                fail(lineno, col, "property '" + p + "' is both asserted and negated", raw);
            (negated ? rec.not_props : rec.props).insert(p);
        } else if (key == "TYPE") {
            if (normalize_label(value) != "instance")
                fail(lineno, col, "TYPE must be 'instance'", raw);
            rec.is_instance = true;
        } else {
            fail(lineno, 1, "unknown key '" + std::string(key) + "'", raw);
        }
    }

    Loaded<Kos> build() {
        Loaded<Kos> out;
        std::vector<Concept> concepts;
        std::unordered_map<std::string, std::size_t> by_id;
        std::unordered_map<std::string, std::vector<std::size_t>> by_term;

        for (const auto& rec : records_) {
            Concept c;
            c.id = rec.id ? *rec.id : derive_id(rec.term);
            c.preferred_label = rec.term;
            c.alt_labels = rec.alt_labels;
            c.is_instance = rec.is_instance;
            c.asserted_properties = rec.props;
            c.negated_properties = rec.not_props;
            if (!by_id.emplace(c.id, concepts.size()).second) {
                const auto line = rec.id ? rec.id_line : rec.line;
                fail(line, 1, "duplicate concept id '" + c.id + "'", c.id);
            }
            by_term[normalize_label(rec.term)].push_back(concepts.size());
            concepts.push_back(std::move(c));
        }

        auto resolve = [&](const RelationLine& rl) -> std::size_t {
            if (auto it = by_id.find(rl.value); it != by_id.end()) return it->second;
            if (auto it = by_term.find(normalize_label(rl.value)); it != by_term.end()) {
                if (it->second.size() > 1)
                    fail(rl.line, rl.column,
                         "ambiguous reference '" + rl.value + "' matches several TERMs; use an ID",
                         rl.text);
                return it->second.front();
            }
            const auto derived = derive_id(rl.value);
            if (auto it = by_id.find(derived); it != by_id.end()) return it->second;
            if (!options_.implicit_concepts)
                fail(rl.line, rl.column, "unresolved reference '" + rl.value + "'", rl.text);
            Concept c;
            c.id = derived;
            c.preferred_label = rl.value;
            by_id.emplace(c.id, concepts.size());
            by_term[normalize_label(rl.value)].push_back(concepts.size());
            concepts.push_back(std::move(c));
            return concepts.size() - 1;
        };

        // Resolve first (this may append implicit concepts), then emit edges.
        struct Pending {
            RelationEdge edge;
            Direction direction;
        };
        std::vector<Pending> pending;
        for (std::size_t r = 0; r < records_.size(); ++r) {
            for (const auto& rl : records_[r].relations) {
                const auto other = resolve(rl);
                const auto& self_id = concepts[r].id;
                const auto& other_id = concepts[other].id;
                RelationEdge e = rl.direction == Direction::Forward
                                     ? RelationEdge{self_id, other_id, rl.rtype}
                                     : RelationEdge{other_id, self_id, rl.rtype};
                pending.push_back({std::move(e), rl.direction});
            }
        }
        std::set<RelationEdge> forward;
        for (const auto& p : pending)
            if (p.direction == Direction::Forward) forward.insert(p.edge);
        std::vector<RelationEdge> edges;
        edges.reserve(pending.size());
        for (auto& p : pending) {
            if (p.direction == Direction::Backward && forward.count(p.edge)) continue;
            edges.push_back(std::move(p.edge));
        }

        const bool empty = concepts.empty();
        try {
            out.value = Kos(options_.name, kind_.value_or(KosKind::Thesaurus), std::move(concepts),
                            std::move(edges));
        } catch (const KosError& e) {
            throw ParseError(1, 1, e.what(), "");
        }
        if (empty) {
            out.findings.push_back({"empty_kos", Severity::Warning, {}, {},
                                    "the input contains no concept records", std::nullopt});
        }
        return out;
    }

    std::string_view source_;
    const NativeOptions& options_;
    std::optional<KosKind> kind_;
    std::vector<Record> records_;
};

}  // namespace

Loaded<Kos> parse_native(std::string_view source, const NativeOptions& options) {
    return NativeParser(source, options).run();
}

std::string serialize_native(const Kos& kos) {
    std::string out = "KOS-KIND: " + std::string(to_string(kos.kind())) + "\n";

    std::vector<std::size_t> order(kos.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        return kos.concepts()[a].id < kos.concepts()[b].id;
    });

    std::vector<std::vector<const RelationEdge*>> outgoing(kos.size());
    for (std::size_t i = 0; i < kos.edges().size(); ++i) {
        const auto s = kos.source_index(i);
        if (s != npos) outgoing[s].push_back(&kos.edges()[i]);
    }

    for (auto i : order) {
        const Concept& c = kos.concepts()[i];
        out += "\nTERM: " + c.preferred_label + "\n";
        if (derive_id(c.preferred_label) != c.id) out += "ID: " + c.id + "\n";
        for (const auto& alt : c.alt_labels) out += "UF: " + alt + "\n";
        if (c.is_instance) out += "TYPE: instance\n";
        for (const auto& p : c.asserted_properties) out += "PROP: " + p + "\n";
        for (const auto& p : c.negated_properties) out += "NOT-PROP: " + p + "\n";
        auto& edges = outgoing[i];
        std::stable_sort(edges.begin(), edges.end(), [](const auto* a, const auto* b) {
            return std::tie(a->rtype, a->target) < std::tie(b->rtype, b->target);
        });
        for (const auto* e : edges) out += relation_key(e->rtype) + ": " + e->target + "\n";
    }
    return out;
}

}  // namespace kosq
