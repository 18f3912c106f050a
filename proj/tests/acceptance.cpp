// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "kosq/graph.hpp"
#include "kosq/lints.hpp"
#include "kosq/metrics.hpp"
#include "kosq/overlap.hpp"
#include "kosq/survey.hpp"
#include "support.hpp"

using namespace kosq;
using namespace kosq::testing;

namespace {

// Collects failed expectations for one criterion.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++total_;
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::size_t total() const { return total_; }
    std::string summary() const {
        if (ok()) return std::to_string(total_) + " checks";
        std::string s = std::to_string(failed_) + "/" + std::to_string(total_) + " checks failed:";
        for (const auto& f : failures_) s += " [" + f + "]";
        return s;
    }

private:
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

struct Criterion {
    std::string name;
    double time_limit_s;
    std::function<void(Checks&, std::string& extra)> body;
};

std::size_t count_check(const std::vector<LintFinding>& fs, const std::string& check) {
    return static_cast<std::size_t>(
        std::count_if(fs.begin(), fs.end(), [&](const LintFinding& f) { return f.check == check; }));
}

void paper_examples(Checks& c, std::string&) {
    const auto fishes = detect_semantic_inconsistency(load_fixture("fishes.kos"));
    c.expect(fishes.size() == 1 && fishes[0].concepts.front() == "freshwater_fishes",
             "Fishes: one semantic inconsistency on Freshwater fishes");

    const auto circle = detect_circularity(load_fixture("persons_travelers.kos"));
    c.expect(circle.size() == 1 && circle[0].concepts.size() == 2, "Persons/Travelers: one circle");

    const auto skip = detect_skipping(load_fixture("capra.kos"));
    c.expect(skip.size() == 1 && skip[0].concepts ==
                                     std::vector<ConceptId>{"domestic_goat", "capra"},
             "Capra: one skipping finding on Domestic goat -> Capra");

    const auto cherry = detect_redundancy(load_fixture("cherry.kos"));
    c.expect(cherry.size() == 1 && cherry[0].concepts.size() == 2, "Cherry: one redundancy finding");

    const auto tennis = load_fixture("tennis.kos");
    const std::vector<ConceptPair> pair{{"ball_boy", "tennis_ball"}};
    c.expect(detect_tennis(tennis, pair, 4).size() == 1, "ball boy/tennis ball: one finding");
    c.expect(count_check(detect_tennis(tennis, suggest_related_pairs(tennis), 4), "tennis") == 1,
             "ball boy/tennis ball: one finding from suggested pairs");
    auto edges = tennis.edges();
    edges.push_back({"ball_boy", "tennis_ball", kAssociation});
    const Kos linked("t", tennis.kind(), tennis.concepts(), edges);
    c.expect(detect_tennis(linked, pair, 4).empty(), "ball boy SEE ALSO tennis ball: no finding");

    c.expect(levenshtein("TopHotel", "Top_Hotel") == 1, "levenshtein(TopHotel, Top_Hotel) = 1");
    c.expect(levenshtein("Power", "Tower") == 1, "levenshtein(Power, Tower) = 1");
    c.expect(q_score({"r", "i", "d", 4, 1}) == -3, "Q(PE 1, EX 4) = -3");

    std::vector<Concept> garden{concept_of("g1", "Garden"), concept_of("g2", "Garden Party"),
                                concept_of("g3", "Garden Party Dinner")};
    c.expect(precombination(Kos("g", KosKind::Thesaurus, garden, {})) == 2.0,
             "precombination of the Garden labels = 2");
}

std::set<std::pair<std::size_t, std::size_t>> shortcut_oracle(const Matrix& adj) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < adj.n; ++a)
        for (std::size_t b = 0; b < adj.n; ++b) {
            if (!adj.m[a][b]) continue;
            auto without = adj;
            without.m[a][b] = false;
            if (closure(without)[a][b]) out.emplace(a, b);
        }
    return out;
}

void oracle_equivalence(Checks& c, std::string& extra) {
    std::mt19937 rng(20240601);
    double worst_cosine = 0;
    for (int round = 0; round < 200; ++round) {
        const auto tag = " (case " + std::to_string(round) + ")";

        // circularity: findings cover exactly the self-reaching concepts
        const auto any = random_kos(rng, 12, 0.15, false, true);
        const auto reach = closure(default_view_matrix(any));
        std::set<ConceptId> self_reaching, flagged;
        for (std::size_t i = 0; i < any.size(); ++i)
            if (reach[i][i]) self_reaching.insert(cid(i));
        for (const auto& f : detect_circularity(any)) flagged.insert(f.concepts.begin(), f.concepts.end());
        c.expect(flagged == self_reaching, "circularity" + tag);

        // skipping and levels on a DAG
        const auto dag = random_kos(rng, 12, 0.3, true);
        const auto adj = default_view_matrix(dag);
        std::set<std::pair<std::size_t, std::size_t>> got;
        for (const auto& f : detect_skipping(dag))
            got.emplace(dag.index_of(f.concepts[0]), dag.index_of(f.concepts[1]));
        c.expect(got == shortcut_oracle(adj), "skipping" + tag);

        const auto levels = hierarchy_levels(dag);
        const auto longest = longest_paths_by_enumeration(adj);
        bool same = true;
        for (std::size_t i = 0; i < dag.size(); ++i) same &= levels.level.at(cid(i)) == longest[i];
        c.expect(same, "levels" + tag);

        // cosine on random corpora
        std::bernoulli_distribution take(0.4);
        IndexedCorpus a{"a", {}}, b{"b", {}};
        for (int d = 0; d < 8; ++d) {
            std::set<ConceptId> sa, sb;
            for (int k = 0; k < 12; ++k) {
                if (take(rng)) sa.insert(cid(k));
                if (take(rng)) sb.insert(cid(k));
            }
            if (!sa.empty()) a.assignments["d" + std::to_string(d)] = sa;
            if (!sb.empty()) b.assignments["d" + std::to_string(d)] = sb;
        }
        const auto id = [](const ConceptId& x) { return x; };
        const auto poly = polyrep_cosine(a, b, id, id);
        for (const auto& doc : poly.per_doc) {
            const double want =
                incidence_cosine(a.assignments.at(doc.doc_id), b.assignments.at(doc.doc_id));
            worst_cosine = std::max(worst_cosine, std::abs(doc.cosine - want));
            c.expect(std::abs(doc.cosine - want) <= 1e-12, "cosine" + tag);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max cosine error %.1e", worst_cosine);
    extra = buf;
}

void metric_invariants(Checks& c, std::string&) {
    std::mt19937 rng(7);

    // relabeling / reordering, every Table 2 measure
    for (int round = 0; round < 100; ++round) {
        const auto base = random_kos(rng, 20, 0.15, true);
        auto cs = base.concepts();
        std::uniform_int_distribution<int> word(0, 3);
        for (auto& x : cs) {
            x.preferred_label = "w" + std::to_string(word(rng)) + " " + x.id;
            for (int i = word(rng); i > 1; --i) x.alt_labels.push_back("alt" + std::to_string(i) + x.id);
        }
        const Kos k("k", KosKind::Thesaurus, cs, base.edges());
        IndexedCorpus corpus{"k", {}};
        std::bernoulli_distribution take(0.3);
        for (int d = 0; d < 5; ++d)
            for (const auto& x : cs)
                if (take(rng)) corpus.assignments["d" + std::to_string(d)].insert(x.id);

        std::map<ConceptId, ConceptId> rename;
        const auto moved = relabel_and_shuffle(k, rng, &rename);
        IndexedCorpus moved_corpus{"k", {}};
        for (const auto& [doc, ids] : corpus.assignments)
            for (const auto& x : ids) moved_corpus.assignments[doc].insert(rename.at(x));

        const auto a = structure_report(k, {}, &corpus);
        const auto b = structure_report(moved, {}, &moved_corpus);
        const auto tag = " (case " + std::to_string(round) + ")";
        c.expect(a.concept_count == b.concept_count, "concepts" + tag);
        c.expect(a.relation_count == b.relation_count, "relations" + tag);
        c.expect(a.expressiveness == b.expressiveness, "expressiveness" + tag);
        c.expect(a.mean_relations_per_concept == b.mean_relations_per_concept, "mean relations" + tag);
        c.expect(a.mean_denotations == b.mean_denotations, "denotations" + tag);
        c.expect(a.docs_per_concept == b.docs_per_concept, "docs per concept" + tag);
        c.expect(a.depth == b.depth, "depth" + tag);
        c.expect(a.level_distribution == b.level_distribution, "level distribution" + tag);
        c.expect(a.fan_out == b.fan_out, "fan-out" + tag);
        c.expect(a.groundedness == b.groundedness, "groundedness" + tag);
        c.expect(a.tangledness == b.tangledness, "tangledness" + tag);
        c.expect(a.siblinghood == b.siblinghood, "siblinghood" + tag);
        c.expect(a.precombination == b.precombination, "precombination" + tag);
        c.expect(std::abs(*a.tree_balance - *b.tree_balance) <= 1e-12, "tree balance" + tag);
    }

    // chains
    for (std::size_t n = 1; n <= 100; ++n) {
        std::vector<RelationEdge> es;
        for (std::size_t i = 1; i < n; ++i) es.push_back({cid(i), cid(i - 1), kHyponymy});
        const auto chain = relabel_and_shuffle(numbered_kos(n, es), rng);
        const double want = 1.0 / static_cast<double>(n);
        c.expect(fan_out(chain) == want && groundedness(chain) == want,
                 "chain of " + std::to_string(n));
    }

    // forests
    for (int round = 0; round < 100; ++round) {
        const auto f = random_forest(rng, 60);
        const double n = static_cast<double>(f.kos.size());
        c.expect(tangledness(f.kos) == (n - static_cast<double>(f.roots)) / n,
                 "forest tangledness (case " + std::to_string(round) + ")");
    }

    // one parent with three children, amid unrelated concepts
    for (int round = 0; round < 100; ++round) {
        std::uniform_int_distribution<std::size_t> extra(0, 10);
        const auto n = 4 + extra(rng);
        std::bernoulli_distribution coin(0.5);
        std::vector<RelationEdge> es;
        for (std::size_t i = 1; i <= 3; ++i) es.push_back({cid(i), cid(0), coin(rng) ? kBroader : kHyponymy});
        for (std::size_t i = 4; i + 1 < n; i += 2) es.push_back({cid(i), cid(i + 1), kAssociation});
        const auto k = relabel_and_shuffle(numbered_kos(n, es), rng);
        c.expect(siblinghood(k) == 2.0, "siblinghood (case " + std::to_string(round) + ")");
    }

    // alt labels never count as relations
    for (int round = 0; round < 100; ++round) {
        const auto k = random_kos(rng, 15, 0.3, false);
        auto cs = k.concepts();
        std::uniform_int_distribution<int> many(0, 4);
        for (auto& x : cs)
            for (int i = many(rng); i > 0; --i) x.alt_labels.push_back("syn" + std::to_string(i) + x.id);
        c.expect(count_relations(Kos("x", k.kind(), cs, k.edges())) == count_relations(k),
                 "alt labels (case " + std::to_string(round) + ")");
    }
}

bool same_graph(const Kos& a, const Kos& b) {
    if (a.size() != b.size() || a.kind() != b.kind()) return false;
    for (const auto& c : a.concepts()) {
        if (!b.contains(c.id)) return false;
        const auto& d = b.at(c.id);
        if (c.preferred_label != d.preferred_label || c.alt_labels != d.alt_labels ||
            c.is_instance != d.is_instance || c.asserted_properties != d.asserted_properties ||
            c.negated_properties != d.negated_properties)
            return false;
    }
    return std::set<RelationEdge>(a.edges().begin(), a.edges().end()) ==
               std::set<RelationEdge>(b.edges().begin(), b.edges().end()) &&
           a.edges().size() == b.edges().size();
}

void parser_robustness(Checks& c, std::string& extra) {
    std::mt19937 rng(99);
    std::size_t accepted = 0, rejected = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto bytes = random_bytes(rng, 256);
        for (int which = 0; which < 2; ++which) {
            try {
                if (which == 0) parse_native(bytes);
                else parse_skos_subset(bytes);
                ++accepted;
            } catch (const ParseError& e) {
                ++rejected;
                c.expect(e.line() >= 1 && e.column() >= 1, "ParseError position");
            } catch (const std::exception& e) {
                c.expect(false, std::string("unexpected exception: ") + e.what());
            }
        }
    }
    for (const auto* name : {"fishes.kos", "persons_travelers.kos", "capra.kos", "cherry.kos",
                             "tennis.kos", "hotels_a.kos", "hotels_b.kos"}) {
        const auto first = parse_native(read_fixture(name)).value;
        const auto second = parse_native(serialize_native(first)).value;
        c.expect(same_graph(first, second), std::string("round trip ") + name);
    }
    extra = std::to_string(accepted) + " parsed, " + std::to_string(rejected) + " rejected";
}

void levenshtein_axioms(Checks& c, std::string&) {
    std::mt19937 rng(31337);
    const std::string alphabet = "abcAB_ -";
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_string(rng, 8, alphabet);
        const auto b = random_string(rng, 8, alphabet);
        const auto x = random_string(rng, 8, alphabet);
        const auto ab = levenshtein(a, b);
        c.expect(ab == levenshtein_oracle(a, b), "oracle '" + a + "' '" + b + "'");
        c.expect(ab == levenshtein(b, a), "symmetry");
        c.expect((ab == 0) == (a == b), "identity of indiscernibles");
        c.expect(levenshtein(a, x) <= ab + levenshtein(b, x), "triangle inequality");
    }
}

std::string generated_native(std::size_t concepts, std::size_t edges) {
    std::mt19937 rng(4242);
    std::string text = "KOS-KIND: thesaurus\n";
    text.reserve(concepts * 60 + edges * 20);
    std::size_t placed = 0;
    std::uniform_int_distribution<int> per(0, 6);
    std::bernoulli_distribution assoc(0.1), alt(0.2);
    for (std::size_t i = 0; i < concepts; ++i) {
        text += "\nTERM: Concept " + std::to_string(i) + "\n";
        if (alt(rng)) text += "UF: Alias " + std::to_string(i) + "\n";
        if (i == 0) continue;
        const std::size_t want =
            i + 1 == concepts ? edges - placed
                              : std::min<std::size_t>(edges - placed, static_cast<std::size_t>(per(rng)));
        std::set<std::size_t> used;
        std::uniform_int_distribution<std::size_t> earlier(0, i - 1);
        for (std::size_t e = 0; e < want && used.size() < i; ++e) {
            const auto t = earlier(rng);
            if (!used.insert(t).second) continue;
            text += (assoc(rng) ? "RT: concept_" : "BT: concept_") + std::to_string(t) + "\n";
            ++placed;
        }
    }
    return text;
}

void performance(Checks& c, std::string& extra) {
    const std::size_t n = 100000, m = 300000;
    const auto text = generated_native(n, m);
    const auto start = std::chrono::steady_clock::now();
    const auto loaded = parse_native(text);
    const auto& kos = loaded.value;
    const auto structure = structure_report(kos);
    const auto circles = detect_circularity(kos);
    const auto skips = detect_skipping(kos);
    const auto dupes = detect_redundancy(kos);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;

    c.expect(kos.size() == n, "concept count " + std::to_string(kos.size()));
    c.expect(kos.edges().size() >= m * 95 / 100 && kos.edges().size() <= m,
             "edge count " + std::to_string(kos.edges().size()));
    c.expect(structure.depth.has_value() && circles.empty() && dupes.empty(), "generated KOS clean");
    c.expect(secs < 10.0, "end-to-end under 10 s");
    c.expect(peak_mb < 1024.0, "peak memory under 1 GB");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu concepts, %zu edges, %zu skipping findings, %.2f s, peak %.0f MB",
                  kos.size(), kos.edges().size(), skips.size(), secs, peak_mb);
    extra = buf;
}

void table_conformance(Checks& c, std::string& extra) {
    // Rows as printed: folksonomy, nomenclature, classification, thesaurus, ontology.
    const std::vector<KosKind> kinds{KosKind::Folksonomy, KosKind::Nomenclature,
                                     KosKind::Classification, KosKind::Thesaurus, KosKind::Ontology};
    const std::vector<std::pair<RelationType, std::vector<std::string>>> table{
        {kGenIdentity, {"-", "yes", "-", "-", "yes"}},
        {kBroader, {"-", "-", "yes", "yes", "yes"}},
        {kHyponymy, {"-", "-", "-", "yes", "yes"}},
        {kMeronymy, {"-", "-", "-", "yes", "yes"}},
        {kInstanceOf, {"-", "-", "-", "as req.", "yes"}},
        {kAssociation, {"-", "as req.", "as req.", "yes", "yes"}},
        {RelationType::custom("has_subsidiary_company"), {"-", "-", "-", "-", "yes"}},
    };
    std::size_t cells = 0;
    for (const auto& [rtype, row] : table)
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const auto kos = numbered_kos(2, {{"c0", "c1", rtype}}, kinds[k]);
            const auto findings = validate_kind(kos);
            const bool forbidden = row[k] == "-";
            c.expect(findings.size() == (forbidden ? 1u : 0u),
                     to_string(rtype) + " in " + std::string(to_string(kinds[k])));
            ++cells;
        }
    extra = std::to_string(cells) + " cells";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"paper examples (exact)", 1.0, paper_examples},
        {"oracle equivalence (200 random KOSs, cosine 1e-12)", 30.0, oracle_equivalence},
        {"metric invariants (100 cases per property)", 60.0, metric_invariants},
        {"parser robustness (10,000 random inputs per parser, round trip)", 60.0, parser_robustness},
        {"levenshtein metric axioms (1,000 pairs)", 60.0, levenshtein_axioms},
        {"performance (100k concepts / 300k edges, < 10 s, < 1 GB)", 600.0, performance},
        {"kind capability matrix conformance", 5.0, table_conformance},
    };
    int failed = 0;
    for (const auto& crit : criteria) {
        Checks checks;
        std::string extra;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.body(checks, extra);
        } catch (const std::exception& e) {
            checks.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        checks.expect(secs < crit.time_limit_s, "time limit");
        if (!checks.ok()) ++failed;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (checks.ok() ? "PASS" : "FAIL") << "  " << crit.name << "  ("
                  << checks.summary() << (extra.empty() ? "" : "; " + extra) << "; " << timing
                  << ")\n";
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << '\n';
    return failed == 0 ? 0 : 1;
}
