#include <gtest/gtest.h>

#include "kosq/overlap.hpp"
#include "support.hpp"

using namespace kosq;
using namespace kosq::testing;

namespace {

Kos vocabulary(const std::vector<std::string>& labels) {
    std::vector<Concept> cs;
    for (std::size_t i = 0; i < labels.size(); ++i) cs.push_back(concept_of(cid(i), labels[i]));
    return Kos("v", KosKind::Thesaurus, cs, {});
}

std::string identity(const ConceptId& id) { return id; }

}  // namespace

TEST(Levenshtein, Examples) {
    EXPECT_EQ(levenshtein("TopHotel", "Top_Hotel"), 1u);
    EXPECT_EQ(levenshtein("Power", "Tower"), 1u);
    EXPECT_EQ(levenshtein("same", "same"), 0u);
    EXPECT_EQ(levenshtein("", "abc"), 3u);
    EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
    EXPECT_EQ(levenshtein("Bär", "Bar"), 1u);  // one code point, two bytes
}

TEST(Levenshtein, MetricAxiomsAgainstOracle) {
    std::mt19937 rng(97);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_string(rng, 7, "abc_");
        const auto b = random_string(rng, 7, "abc_");
        const auto c = random_string(rng, 7, "abc_");
        const auto ab = levenshtein(a, b);
        EXPECT_EQ(ab, levenshtein_oracle(a, b));
        EXPECT_EQ(ab, levenshtein(b, a));
        EXPECT_EQ(ab == 0, a == b);
        EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
    }
}

TEST(MatchingKey, Separators) {
    EXPECT_EQ(matching_key("TopHotel"), matching_key("Top_Hotel"));
    EXPECT_EQ(matching_key("top-hotel"), matching_key("Top Hotel"));
    EXPECT_NE(matching_key("Power"), matching_key("Tower"));
}

TEST(Match, Examples) {
    const auto a = vocabulary({"Fish", "Tree", "House"});
    EXPECT_DOUBLE_EQ(match_vocabularies(a, a, 0, false).vocab_jaccard, 1);

    const auto hotel_a = vocabulary({"TopHotel"});
    const auto hotel_b = vocabulary({"Top_Hotel"});
    const auto norm = match_vocabularies(hotel_a, hotel_b, 0, true);
    ASSERT_EQ(norm.matched_pairs.size(), 1u);
    EXPECT_EQ(norm.matched_pairs[0].distance, 0u);
    EXPECT_TRUE(match_vocabularies(hotel_a, hotel_b, 0, false).matched_pairs.empty());
    EXPECT_EQ(match_vocabularies(hotel_a, hotel_b, 1, false).matched_pairs.size(), 1u);

    EXPECT_DOUBLE_EQ(
        match_vocabularies(vocabulary({"alpha", "beta"}), vocabulary({"gamma", "delta"}), 0, false)
            .vocab_jaccard,
        0);
    EXPECT_THROW(match_vocabularies(Kos(), a, 0, false), KosError);
}

TEST(Match, GreedyOneToOne) {
    // "Power" is 1 away from both; the tie goes to the lexicographically smaller label.
    const auto a = vocabulary({"Power"});
    const auto b = vocabulary({"Tower", "Bower"});
    const auto m = match_vocabularies(a, b, 1, false);
    ASSERT_EQ(m.matched_pairs.size(), 1u);
    EXPECT_EQ(m.matched_pairs[0].label_b, "Bower");
    EXPECT_DOUBLE_EQ(m.vocab_jaccard, 1.0 / (1 + 2 - 1));
}

TEST(Match, ExactIsSetIntersection) {
    std::mt19937 rng(101);
    for (int i = 0; i < 100; ++i) {
        std::set<std::string> sa, sb;
        for (int k = 0; k < 8; ++k) {
            sa.insert(random_string(rng, 3, "ab"));
            sb.insert(random_string(rng, 3, "ab"));
        }
        sa.erase("");
        sb.erase("");
        if (sa.empty() || sb.empty()) continue;
        const auto m = match_vocabularies(vocabulary({sa.begin(), sa.end()}),
                                          vocabulary({sb.begin(), sb.end()}), 0, false);
        std::set<std::string> common;
        for (const auto& x : sa)
            if (sb.count(x)) common.insert(x);
        std::set<std::string> got;
        for (const auto& p : m.matched_pairs) {
            EXPECT_EQ(p.label_a, p.label_b);
            got.insert(p.label_a);
        }
        EXPECT_EQ(got, common);
    }
}

TEST(Polyrep, Examples) {
    IndexedCorpus a{"a", {{"d1", {"x", "y"}}, {"d2", {"x"}}, {"only_a", {"x"}}}};
    IndexedCorpus same = a;
    const auto r = polyrep_cosine(a, same, identity, identity);
    EXPECT_EQ(r.docs_compared, 3u);
    EXPECT_DOUBLE_EQ(*r.mean_cosine, 1);

    IndexedCorpus disjoint{"b", {{"d1", {"p"}}, {"d2", {"q"}}}};
    const auto z = polyrep_cosine(a, disjoint, identity, identity);
    EXPECT_EQ(z.docs_compared, 2u);
    EXPECT_DOUBLE_EQ(*z.mean_cosine, 0);

    IndexedCorpus ga{"a", {{"d", {"s", "t", "u"}}}};
    IndexedCorpus gb{"b", {{"d", {"s", "t", "v", "w"}}}};
    const auto g = polyrep_cosine(ga, gb, identity, identity);
    ASSERT_EQ(g.per_doc.size(), 1u);
    EXPECT_EQ(g.per_doc[0].g, 2u);
    EXPECT_EQ(g.per_doc[0].a, 1u);
    EXPECT_EQ(g.per_doc[0].b, 2u);
    EXPECT_NEAR(g.per_doc[0].cosine, 2 / std::sqrt(12.0), 1e-15);
    EXPECT_NEAR(g.per_doc[0].cosine, 0.5774, 1e-4);

    const auto none = polyrep_cosine(ga, IndexedCorpus{"b", {{"other", {"s"}}}}, identity, identity);
    EXPECT_EQ(none.docs_compared, 0u);
    EXPECT_FALSE(none.mean_cosine.has_value());
    EXPECT_FALSE(none.notes.empty());
}

TEST(Polyrep, LabelIdentityAcrossKoss) {
    const Kos ka("a", KosKind::Thesaurus, {concept_of("fish1", "Fish"), concept_of("t", "Tree")}, {});
    const Kos kb("b", KosKind::Thesaurus, {concept_of("F", "fish"), concept_of("h", "House")}, {});
    IndexedCorpus ca{"a", {{"d", {"fish1", "t"}}}};
    IndexedCorpus cb{"b", {{"d", {"F", "h"}}}};
    const auto r = polyrep_cosine(ca, cb, label_identity(ka), label_identity(kb));
    ASSERT_EQ(r.per_doc.size(), 1u);
    EXPECT_EQ(r.per_doc[0].g, 1u);
    EXPECT_DOUBLE_EQ(r.per_doc[0].cosine, 0.5);
}

TEST(Polyrep, MatchesIncidenceOracleAndIsSymmetric) {
    std::mt19937 rng(103);
    std::bernoulli_distribution take(0.4);
    for (int round = 0; round < 200; ++round) {
        IndexedCorpus a{"a", {}}, b{"b", {}};
        for (int d = 0; d < 6; ++d) {
            std::set<ConceptId> sa, sb;
            for (int c = 0; c < 8; ++c) {
                if (take(rng)) sa.insert(cid(c));
                if (take(rng)) sb.insert(cid(c));
            }
            const auto doc = "d" + std::to_string(d);
            if (!sa.empty() && (d < 3 || take(rng))) a.assignments[doc] = sa;
            if (!sb.empty() && (d < 3 || take(rng))) b.assignments[doc] = sb;
        }
        const auto r = polyrep_cosine(a, b, identity, identity);
        const auto back = polyrep_cosine(b, a, identity, identity);
        std::size_t shared = 0;
        double sum = 0;
        for (const auto& [doc, sa] : a.assignments) {
            if (!b.assignments.count(doc)) continue;
            ++shared;
            sum += incidence_cosine(sa, b.assignments.at(doc));
        }
        EXPECT_EQ(r.docs_compared, shared);
        ASSERT_EQ(r.per_doc.size(), shared);
        for (std::size_t i = 0; i < r.per_doc.size(); ++i) {
            const auto& x = r.per_doc[i];
            EXPECT_NEAR(x.cosine,
                        incidence_cosine(a.assignments.at(x.doc_id), b.assignments.at(x.doc_id)),
                        1e-12);
            EXPECT_GE(x.cosine, 0);
            EXPECT_LE(x.cosine, 1);
            EXPECT_EQ(x.cosine == 1.0, a.assignments.at(x.doc_id) == b.assignments.at(x.doc_id));
            EXPECT_EQ(back.per_doc[i].a, x.b);
            EXPECT_EQ(back.per_doc[i].b, x.a);
            EXPECT_DOUBLE_EQ(back.per_doc[i].cosine, x.cosine);
        }
        if (shared > 0) {
            EXPECT_NEAR(*r.mean_cosine, sum / static_cast<double>(shared), 1e-12);
        } else {
            EXPECT_FALSE(r.mean_cosine.has_value());
        }
    }
}
