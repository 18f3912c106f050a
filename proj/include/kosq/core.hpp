#pragma once
// Concept graph model for knowledge organization systems (KOSs).
//
// A Kos is a set of concept records plus typed, directed relation edges.
// Hierarchy edges always point narrower -> broader. Synonyms live on the
// concept as alt labels and are never edges.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kosq {

using ConceptId = std::string;

class KosError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// True when `s` is usable as a ConceptId: non-empty, no whitespace, no ';'.
bool is_valid_id(std::string_view s);

// Case-fold (ASCII), trim, collapse internal whitespace runs to one space.
std::string normalize_label(std::string_view label);

struct Concept {
    ConceptId id;
    std::string preferred_label;
    std::vector<std::string> alt_labels;
    bool is_instance = false;
    std::set<std::string> asserted_properties;
    std::set<std::string> negated_properties;
};

enum class RelationKind {
    HierarchyUnspecified,
    Hyponymy,
    Meronymy,
    InstanceOf,
    Association,
    GenIdentity,
    Custom,
};

struct RelationType {
    RelationKind kind = RelationKind::HierarchyUnspecified;
    std::string custom_name;  // only for Custom

    static RelationType custom(std::string name);
    bool is_hierarchy() const;

    friend auto operator<=>(const RelationType&, const RelationType&) = default;
};

inline const RelationType kBroader{RelationKind::HierarchyUnspecified, {}};
inline const RelationType kHyponymy{RelationKind::Hyponymy, {}};
inline const RelationType kMeronymy{RelationKind::Meronymy, {}};
inline const RelationType kInstanceOf{RelationKind::InstanceOf, {}};
inline const RelationType kAssociation{RelationKind::Association, {}};
inline const RelationType kGenIdentity{RelationKind::GenIdentity, {}};

std::string to_string(const RelationType& t);
std::string_view to_string(RelationKind k);

struct RelationEdge {
    ConceptId source;  // narrower / dependent side
    ConceptId target;  // broader / related side
    RelationType rtype;

    friend auto operator<=>(const RelationEdge&, const RelationEdge&) = default;
};

enum class KosKind { Folksonomy, Nomenclature, Classification, Thesaurus, Ontology };

std::string_view to_string(KosKind k);
std::optional<KosKind> parse_kos_kind(std::string_view s);

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity s);
std::optional<Severity> parse_severity(std::string_view s);

struct LintFinding {
    std::string check;
    Severity severity = Severity::Warning;
    std::vector<ConceptId> concepts;
    std::vector<RelationEdge> edges;
    std::string explanation;
    std::optional<std::string> evidence;

    friend bool operator==(const LintFinding&, const LintFinding&) = default;
};

// Detector output order: check, then concept ids, then edges.
void sort_findings(std::vector<LintFinding>& findings);

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Immutable after construction. Construction rejects duplicate concept ids
// and concepts that break the Concept invariants; dangling edge endpoints
// are kept so validate_graph can report them.
class Kos {
public:
    Kos() = default;
    Kos(std::string name, KosKind kind, std::vector<Concept> concepts,
        std::vector<RelationEdge> edges);

    const std::string& name() const { return name_; }
    KosKind kind() const { return kind_; }
    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::vector<RelationEdge>& edges() const { return edges_; }
    std::size_t size() const { return concepts_.size(); }
    bool empty() const { return concepts_.empty(); }

    // Index into concepts(), or npos.
    std::size_t index_of(std::string_view id) const;
    bool contains(std::string_view id) const { return index_of(id) != npos; }
    const Concept& at(std::string_view id) const;

    // Resolved endpoints of edges()[i]; npos when dangling.
    std::size_t source_index(std::size_t edge) const { return resolved_[edge].first; }
    std::size_t target_index(std::size_t edge) const { return resolved_[edge].second; }

private:
    std::string name_;
    KosKind kind_ = KosKind::Thesaurus;
    std::vector<Concept> concepts_;
    std::vector<RelationEdge> edges_;
    std::vector<std::pair<std::size_t, std::size_t>> resolved_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Structural checks: dangling endpoints, duplicate (source,target,rtype),
// hierarchy self-loops.
std::vector<LintFinding> validate_graph(const Kos& kos);

// Whether the relation type may appear in a KOS of this kind.
bool kind_permits(KosKind kind, const RelationType& rtype);

// One finding per edge whose type the KOS kind does not permit.
std::vector<LintFinding> validate_kind(const Kos& kos);

struct ViewOptions {
    bool include_meronymy = false;
    bool include_instances = false;
};

// Hierarchy subgraph over concept indices, narrower -> broader. Parallel
// edges between the same pair are merged; dangling edges are skipped.
struct HierarchyView {
    std::size_t node_count = 0;
    std::vector<std::vector<std::size_t>> parents;
    std::vector<std::vector<std::size_t>> children;

    std::size_t edge_count() const;
};

HierarchyView generalization_view(const Kos& kos, const ViewOptions& options = {});

// View over an explicit set of relation types (used for property inheritance).
HierarchyView hierarchy_view(const Kos& kos, const std::set<RelationType>& types);

// Undirected shortest path counted in edges, over edges whose type is in
// `edge_filter`. Throws KosError on unknown ids.
std::optional<std::size_t> shortest_path_length(const Kos& kos, std::string_view a,
                                                std::string_view b,
                                                const std::set<RelationType>& edge_filter);

// Same, over every edge type (custom relations included).
std::optional<std::size_t> shortest_path_length(const Kos& kos, std::string_view a,
                                                std::string_view b);

}  // namespace kosq
