#include <random>
#include <set>

#include <gtest/gtest.h>

#include "newsrank/error.hpp"
#include "newsrank/ranker.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace newsrank;

namespace {

SignalVector vec(std::string domain, double f_r, double f_p = 0, double f_e = 0, double f_b = 0, bool f_s = false,
                 bool f_a = false) {
    SignalVector v;
    v.domain = std::move(domain);
    v.f_r = f_r;
    v.f_p = f_p;
    v.f_e = f_e;
    v.f_b = f_b;
    v.f_s = f_s;
    v.f_a = f_a;
    return v;
}

SignalVector random_vector(std::mt19937_64& rng, std::string domain) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return vec(std::move(domain), u(rng), u(rng), u(rng), u(rng), u(rng) < 0.1, u(rng) < 0.1);
}

} // namespace

TEST(Consensus, ReputationOnly) {
    EXPECT_NEAR(consensus_score(vec("a", 1.0)), 1.65, 1e-15);
}

TEST(Consensus, BothFlags) {
    EXPECT_NEAR(consensus_score(vec("a", 1.0, 0, 0, 0, true, true)), 1.489125, 1e-12);
}

TEST(Consensus, ZeroSignals) {
    EXPECT_EQ(consensus_score(vec("a", 0, 0, 0, 0, true, true)), 0.0);
    EXPECT_EQ(consensus_score(vec("a", 0)), 0.0);
}

TEST(Consensus, MatchesSpelledOutOracle) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto v = random_vector(rng, "x");
        EXPECT_NEAR(consensus_score(v), oracle::consensus(v.f_r, v.f_p, v.f_e, v.f_b, v.f_s, v.f_a), 1e-14);
    }
}

TEST(Consensus, Monotonicity) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> step(1e-3, 0.2);
    for (int i = 0; i < 1000; ++i) {
        const auto v = random_vector(rng, "x");
        const double r = consensus_score(v);
        auto up = v;
        up.f_r += step(rng);
        EXPECT_GT(consensus_score(up), r);
        up = v;
        up.f_p += step(rng);
        EXPECT_LT(consensus_score(up), r);
        up = v;
        up.f_b += step(rng);
        EXPECT_LT(consensus_score(up), r);
        if (!v.f_s) {
            up = v;
            up.f_s = true;
            EXPECT_NEAR(consensus_score(up), consensus_score(v) * 0.95, 1e-15);
        }
    }
}

TEST(Consensus, UnitPenaltyIgnoresFlags) {
    RankingConfig cfg;
    cfg.penalty = 1.0;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        auto v = random_vector(rng, "x");
        auto w = v;
        w.f_s = !v.f_s;
        w.f_a = !v.f_a;
        EXPECT_EQ(consensus_score(v, cfg), consensus_score(w, cfg));
    }
}

TEST(Consensus, PenaltyValidated) {
    RankingConfig cfg;
    cfg.penalty = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg.penalty = 1.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RankAll, OrderByScore) {
    const std::vector<SignalVector> v = {vec("low.com", 0.1), vec("high.com", 0.9)};
    const auto r = rank_all(v);
    EXPECT_EQ(ranked_domains(r), (std::vector<std::string>{"high.com", "low.com"}));
    EXPECT_EQ(r[0].rank, 1u);
    EXPECT_EQ(r[1].rank, 2u);
}

TEST(RankAll, TiesAlphabetical) {
    const std::vector<SignalVector> v = {vec("b.com", 0.5), vec("a.com", 0.5), vec("c.com", 0.5)};
    EXPECT_EQ(ranked_domains(rank_all(v)), (std::vector<std::string>{"a.com", "b.com", "c.com"}));
}

TEST(RankAll, MatchesSortOracleOn600Vectors) {
    std::mt19937_64 rng(4);
    std::vector<SignalVector> v;
    std::vector<oracle::ScoredDomain> expected;
    for (int i = 0; i < 600; ++i) {
        // Coarse values so ties occur.
        auto s = random_vector(rng, "s" + std::to_string(rng() % 100000) + ".com");
        s.f_r = static_cast<double>(rng() % 10) / 10.0;
        s.f_p = s.f_e = s.f_b = 0.0;
        v.push_back(s);
        expected.push_back({s.domain, consensus_score(s)});
    }
    // Domains must be unique for a total order.
    std::set<std::string> seen;
    std::vector<SignalVector> unique;
    std::vector<oracle::ScoredDomain> unique_expected;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (seen.insert(v[i].domain).second) {
            unique.push_back(v[i]);
            unique_expected.push_back(expected[i]);
        }
    }
    const auto r = rank_all(unique);
    const auto sorted = oracle::sort_scores(unique_expected);
    ASSERT_EQ(r.size(), sorted.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(r[i].domain, sorted[i].domain);
        EXPECT_EQ(r[i].rank, i + 1);
    }
}

TEST(RankAll, IsPermutationAndFlagsNeverHelp) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SignalVector> v;
        for (int i = 0; i < 60; ++i) v.push_back(random_vector(rng, "s" + std::to_string(i) + ".com"));
        const auto r = rank_all(v);
        std::set<std::string> domains;
        for (const auto& s : r) domains.insert(s.domain);
        EXPECT_EQ(domains.size(), v.size());

        const std::size_t target = rng() % v.size();
        if (v[target].f_s || consensus_score(v[target]) <= 0) continue;
        auto flagged = v;
        flagged[target].f_s = true;
        auto position = [&](const RankingResult& res) {
            for (const auto& s : res)
                if (s.domain == v[target].domain) return s.rank;
            return std::size_t{0};
        };
        EXPECT_GE(position(rank_all(flagged)), position(r));
    }
}

TEST(RankAll, PercentilesUseCompetitionRanks) {
    auto a = vec("a.com", 0.9, 0.1, 0.5, 0.0);
    auto b = vec("b.com", 0.5, 0.1, 0.5, 0.2);
    auto c = vec("c.com", 0.1, 0.9, 0.2, 0.0);
    a.raw.bot = 0.8;
    c.raw.bot = 0.1;
    const auto r = rank_all(std::vector<SignalVector>{a, b, c});
    const auto& ra = r.at(0);
    ASSERT_EQ(ra.domain, "a.com");
    EXPECT_DOUBLE_EQ(ra.percentiles[0], 1.0 / 3.0); // best reputation
    EXPECT_DOUBLE_EQ(ra.percentiles[1], 1.0 / 3.0); // tied best popularity
    EXPECT_DOUBLE_EQ(r.at(1).percentiles[1], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(ra.percentiles[2], 1.0 / 3.0); // tied breadth
    EXPECT_DOUBLE_EQ(ra.percentiles[4], 1.0);       // highest bot score ranks last
}

TEST(RankAll, NegativeScoresAllowedAndCsvRoundTrip) {
    const std::vector<SignalVector> v = {vec("neg.com", 0.0, 1.0, 0.0, 1.0), vec("pos.com", 0.5)};
    const auto r = rank_all(v);
    EXPECT_LT(r[1].score, 0.0);
    test_support::TempDir dir;
    write_ranking_csv(r, dir.file("r.csv"));
    const auto back = read_ranking_csv(dir.file("r.csv"));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].domain, "neg.com");
    EXPECT_EQ(back[1].score, r[1].score);
    EXPECT_EQ(back[0].percentiles, r[0].percentiles);
}
