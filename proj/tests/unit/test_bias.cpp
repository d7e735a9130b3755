#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "newsrank/bias.hpp"

using namespace newsrank;

namespace {

EntityPartyDictionary us_dictionary() {
    EntityPartyDictionary d;
    d.add("Nancy Pelosi", "Democratic", Wing::Left);
    d.add("Chuck Schumer", "Democratic", Wing::Left);
    d.add("Mitch McConnell", "Republican", Wing::Right);
    d.add("Independent Person", "Independent", Wing::Other);
    return d;
}

SentenceAnnotation sentence(double pos, double neu, double neg, std::vector<std::string> entities) {
    return {std::nullopt, SentimentDistribution(pos, neu, neg), std::move(entities)};
}

ArticleRecord article(std::vector<SentenceAnnotation> sentences, std::string id = "a") {
    ArticleRecord a;
    a.article_id = std::move(id);
    a.source_domain = "s.com";
    a.sentences = std::move(sentences);
    return a;
}

void expect_triple(const SentimentDistribution& d, double pos, double neu, double neg, double tol = 1e-12) {
    EXPECT_NEAR(d.pos(), pos, tol);
    EXPECT_NEAR(d.neu(), neu, tol);
    EXPECT_NEAR(d.neg(), neg, tol);
}

SentimentDistribution random_triple(std::mt19937_64& rng) {
    std::gamma_distribution<double> g(0.7, 1.0);
    const double a = g(rng), b = g(rng), c = g(rng);
    const double s = a + b + c;
    if (s == 0.0) return {};
    return {a / s, b / s, c / s};
}

} // namespace

TEST(ArticleDistribution, SingleMentionKeepsTriple) {
    const auto dists = article_party_distribution(article({sentence(0.1, 0.9, 0.0, {"Nancy Pelosi"})}), us_dictionary());
    ASSERT_EQ(dists.size(), 1u);
    expect_triple(dists.at("Democratic"), 0.1, 0.9, 0.0);
}

TEST(ArticleDistribution, RepeatedMentionInOneSentence) {
    const auto once = article_party_distribution(article({sentence(0.3, 0.5, 0.2, {"Nancy Pelosi"})}), us_dictionary());
    const auto twice = article_party_distribution(
        article({sentence(0.3, 0.5, 0.2, {"Nancy Pelosi", "nancy pelosi"})}), us_dictionary());
    expect_triple(twice.at("Democratic"), once.at("Democratic").pos(), once.at("Democratic").neu(),
                  once.at("Democratic").neg());
}

TEST(ArticleDistribution, TwoSentencesAverage) {
    const auto d = article_party_distribution(
        article({sentence(1, 0, 0, {"Nancy Pelosi"}), sentence(0, 0, 1, {"Chuck Schumer"})}), us_dictionary());
    expect_triple(d.at("Democratic"), 0.5, 0.0, 0.5);
}

TEST(ArticleDistribution, UnknownEntitiesAndNoMentions) {
    EXPECT_TRUE(article_party_distribution(article({sentence(1, 0, 0, {"Nobody"})}), us_dictionary()).empty());
    EXPECT_TRUE(article_party_distribution(article({sentence(1, 0, 0, {})}), us_dictionary()).empty());
}

TEST(ArticleVote, OneHotWithTolerance) {
    expect_triple(article_vote({0.1, 0.9, 0.0}), 1, 0, 0, 0);
    expect_triple(article_vote({0.25, 0.5, 0.25}), 0, 1, 0, 0);
    expect_triple(article_vote({0.2, 0.3, 0.5}), 0, 0, 1, 0);
    expect_triple(article_vote({0.3 + 1e-12, 0.4, 0.3}), 0, 1, 0, 0);
}

TEST(Aggregate, ArticleVoteAverages) {
    const std::vector<ArticleRecord> articles = {article({sentence(0.8, 0.2, 0, {"Nancy Pelosi"})}, "1"),
                                                 article({sentence(0.1, 0.2, 0.7, {"Nancy Pelosi"})}, "2")};
    const auto av = aggregate(articles, us_dictionary(), AggregationMethod::ArticleVote);
    expect_triple(av.at("Democratic"), 0.5, 0.0, 0.5);
}

TEST(Aggregate, SingleArticleDistributionIsIdentity) {
    const std::vector<ArticleRecord> articles = {article(
        {sentence(0.6, 0.3, 0.1, {"Nancy Pelosi"}), sentence(0.2, 0.2, 0.6, {"Mitch McConnell", "Chuck Schumer"})})};
    const auto direct = article_party_distribution(articles[0], us_dictionary());
    const auto ad = aggregate(articles, us_dictionary(), AggregationMethod::ArticleDistribution);
    ASSERT_EQ(ad.size(), direct.size());
    for (const auto& [party, d] : direct) expect_triple(ad.at(party), d.pos(), d.neu(), d.neg());
}

TEST(Aggregate, SentenceDistributionWeightsByMentions) {
    // Article 1: nine mentions in a positive sentence; article 2: one in a negative one.
    const std::vector<std::string> nine(9, "Nancy Pelosi");
    const std::vector<ArticleRecord> articles = {article({sentence(1, 0, 0, nine)}, "1"),
                                                 article({sentence(0, 0, 1, {"Nancy Pelosi"})}, "2")};
    const auto sd = aggregate(articles, us_dictionary(), AggregationMethod::SentenceDistribution);
    const auto ad = aggregate(articles, us_dictionary(), AggregationMethod::ArticleDistribution);
    expect_triple(sd.at("Democratic"), 0.9, 0.0, 0.1);
    expect_triple(ad.at("Democratic"), 0.5, 0.0, 0.5);
}

TEST(Aggregate, MethodsCoincideOnSingleMentionSource) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        // One-hot sentence triples: the only case where a vote equals the distribution.
        const int hot = static_cast<int>(rng() % 3);
        const SentimentDistribution t(hot == 0, hot == 1, hot == 2);
        const std::vector<ArticleRecord> articles = {article({sentence(t.pos(), t.neu(), t.neg(), {"Mitch McConnell"})})};
        const auto av = aggregate(articles, us_dictionary(), AggregationMethod::ArticleVote).at("Republican");
        const auto ad = aggregate(articles, us_dictionary(), AggregationMethod::ArticleDistribution).at("Republican");
        const auto sd = aggregate(articles, us_dictionary(), AggregationMethod::SentenceDistribution).at("Republican");
        EXPECT_EQ(av, ad);
        EXPECT_EQ(ad, sd);
    }
}

TEST(Aggregate, SingleMentionIdentitiesForAnyTriple) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 500; ++i) {
        const auto t = random_triple(rng);
        const std::vector<ArticleRecord> articles = {article({sentence(t.pos(), t.neu(), t.neg(), {"Nancy Pelosi"})})};
        const auto av = aggregate(articles, us_dictionary(), AggregationMethod::ArticleVote).at("Democratic");
        const auto ad = aggregate(articles, us_dictionary(), AggregationMethod::ArticleDistribution).at("Democratic");
        const auto sd = aggregate(articles, us_dictionary(), AggregationMethod::SentenceDistribution).at("Democratic");
        EXPECT_EQ(ad, sd);
        EXPECT_EQ(av, article_vote(ad));
    }
}

TEST(Aggregate, OutputsAreProbabilityTriples) {
    std::mt19937_64 rng(2);
    const std::vector<std::string> names = {"Nancy Pelosi", "Chuck Schumer", "Mitch McConnell", "Independent Person", "x"};
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ArticleRecord> articles;
        for (int a = 0; a < 1 + static_cast<int>(rng() % 4); ++a) {
            std::vector<SentenceAnnotation> sentences;
            for (int s = 0; s < 1 + static_cast<int>(rng() % 5); ++s) {
                std::vector<std::string> ents;
                for (int e = 0; e < static_cast<int>(rng() % 4); ++e) ents.push_back(names[rng() % names.size()]);
                const auto t = random_triple(rng);
                sentences.push_back(sentence(t.pos(), t.neu(), t.neg(), ents));
            }
            articles.push_back(article(sentences, std::to_string(a)));
        }
        for (auto m : {AggregationMethod::ArticleVote, AggregationMethod::ArticleDistribution,
                       AggregationMethod::SentenceDistribution}) {
            for (const auto& [party, d] : aggregate(articles, us_dictionary(), m)) EXPECT_TRUE(d.is_valid()) << party;
        }
    }
}

TEST(Aggregate, PermutationInvariantAndMergeable) {
    std::mt19937_64 rng(3);
    std::vector<ArticleRecord> articles;
    for (int a = 0; a < 12; ++a) {
        std::vector<SentenceAnnotation> sentences;
        for (int s = 0; s < 3; ++s) {
            const auto t = random_triple(rng);
            sentences.push_back(sentence(t.pos(), t.neu(), t.neg(), {rng() % 2 ? "Nancy Pelosi" : "Mitch McConnell"}));
        }
        articles.push_back(article(sentences, std::to_string(a)));
    }
    for (auto m : {AggregationMethod::ArticleVote, AggregationMethod::ArticleDistribution,
                   AggregationMethod::SentenceDistribution}) {
        const auto reference = aggregate(articles, us_dictionary(), m);
        auto shuffled = articles;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& a : shuffled) std::reverse(a.sentences.begin(), a.sentences.end());
        const auto permuted = aggregate(shuffled, us_dictionary(), m);
        SourceAggregator left(m), right(m);
        for (std::size_t i = 0; i < articles.size(); ++i) (i < 5 ? left : right).add(articles[i], us_dictionary());
        right.merge(left);
        const auto merged = right.distributions();
        for (const auto& [party, d] : reference) {
            EXPECT_LE((permuted.at(party).vector() - d.vector()).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LE((merged.at(party).vector() - d.vector()).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Aggregate, UniformWeightScalingCancels) {
    // Doubling every mention scales every sentence weight by 2.
    std::mt19937_64 rng(4);
    std::vector<ArticleRecord> single, doubled;
    for (int a = 0; a < 6; ++a) {
        std::vector<SentenceAnnotation> s1, s2;
        for (int s = 0; s < 3; ++s) {
            const auto t = random_triple(rng);
            const std::string who = rng() % 2 ? "Nancy Pelosi" : "Mitch McConnell";
            s1.push_back(sentence(t.pos(), t.neu(), t.neg(), {who}));
            s2.push_back(sentence(t.pos(), t.neu(), t.neg(), {who, who}));
        }
        single.push_back(article(s1, std::to_string(a)));
        doubled.push_back(article(s2, std::to_string(a)));
    }
    for (auto m : {AggregationMethod::ArticleDistribution, AggregationMethod::SentenceDistribution}) {
        const auto a = aggregate(single, us_dictionary(), m);
        const auto b = aggregate(doubled, us_dictionary(), m);
        for (const auto& [party, d] : a) EXPECT_LE((b.at(party).vector() - d.vector()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(BiasScore, Examples) {
    EXPECT_NEAR(*bias_score({0.3, 0.6, 0.1}), 0.5, 1e-12);
    EXPECT_EQ(*bias_score({0.25, 0.5, 0.25}), 0.0);
    EXPECT_EQ(*bias_score({0.2, 0.8, 0.0}), 1.0);
    EXPECT_FALSE(bias_score({0.0, 1.0, 0.0}).has_value());
}

TEST(BiasScore, Antisymmetric) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto t = random_triple(rng);
        const auto a = bias_score(t);
        const auto b = bias_score({t.neg(), t.neu(), t.pos()});
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) {
            EXPECT_EQ(*a, -*b);
            EXPECT_LE(std::abs(*a), 1.0);
        }
    }
}

TEST(LeanAndGap, LeftCenterExample) {
    const auto r = lean_and_gap({{"Democratic", {0.06, 10}}, {"Republican", {0.00, 10}}}, us_dictionary(), 0.05);
    EXPECT_NEAR(r.gap, 0.06, 1e-12);
    EXPECT_NEAR(r.f_b, 0.03, 1e-12);
    EXPECT_EQ(r.lean, Lean::Left);
}

TEST(LeanAndGap, RightExample) {
    const auto r = lean_and_gap({{"Democratic", {0.03, 4}}, {"Republican", {0.09, 4}}}, us_dictionary(), 0.05);
    EXPECT_NEAR(r.gap, -0.06, 1e-12);
    EXPECT_EQ(r.lean, Lean::Right);
}

TEST(LeanAndGap, EqualWingsAndMissingWing) {
    const auto equal = lean_and_gap({{"Democratic", {0.2, 1}}, {"Republican", {0.2, 7}}}, us_dictionary());
    EXPECT_EQ(equal.gap, 0.0);
    EXPECT_EQ(equal.f_b, 0.0);
    EXPECT_EQ(equal.lean, Lean::None);
    const auto one_sided = lean_and_gap({{"Democratic", {0.9, 3}}}, us_dictionary());
    EXPECT_EQ(one_sided.lean, Lean::None);
    EXPECT_EQ(one_sided.f_b, 0.0);
}

TEST(LeanAndGap, WingScoreIsMentionWeighted) {
    EntityPartyDictionary d = us_dictionary();
    d.add("Green Leader", "Green", Wing::Left);
    const auto r = lean_and_gap({{"Democratic", {0.5, 3}}, {"Green", {-0.5, 1}}, {"Republican", {0.0, 2}}}, d);
    ASSERT_TRUE(r.left_score.has_value());
    EXPECT_NEAR(*r.left_score, 0.25, 1e-12);
    EXPECT_NEAR(r.f_b, 0.125, 1e-12);
    const auto extreme = lean_and_gap({{"Democratic", {1.0, 1}}, {"Republican", {-1.0, 1}}}, d);
    EXPECT_EQ(extreme.f_b, 1.0);
}

TEST(ScoreSourceBias, EndToEnd) {
    const std::vector<ArticleRecord> articles = {
        article({sentence(0.7, 0.3, 0.0, {"Nancy Pelosi"}), sentence(0.0, 0.3, 0.7, {"Mitch McConnell"})})};
    const auto r = score_source_bias("s.com", articles, us_dictionary(), AggregationMethod::SentenceDistribution);
    EXPECT_EQ(r.lean.lean, Lean::Left);
    EXPECT_NEAR(r.lean.gap, 2.0, 1e-12);
    EXPECT_EQ(r.parties.at("Democratic").mentions, 1u);
}

TEST(NaiveSentiment, LexiconFormula) {
    SentimentLexicon lex;
    lex.add("good", SentimentLexicon::Polarity::Positive);
    lex.add("bad", SentimentLexicon::Polarity::Negative);
    expect_triple(naive_sentence_sentiment("Nothing to see here.", lex), 0, 1, 0);
    expect_triple(naive_sentence_sentiment("A GOOD day!", lex), 0.5, 0.5, 0);
    expect_triple(naive_sentence_sentiment("good, then bad.", lex), 1.0 / 3, 1.0 / 3, 1.0 / 3);
}
