#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"
#include "support.hpp"

using namespace newsrank;
using test_support::TempDir;
using test_support::read_file;
using test_support::write_file;

namespace {

std::string article_line(int i, const std::string& domain = "example.com") {
    return R"({"article_id":"a)" + std::to_string(i) + R"(","source_domain":")" + domain +
           R"(","url":"https://)" + domain + "/" + std::to_string(i) +
           R"(","published_at":"2024-01-0)" + std::to_string(1 + i % 9) +
           R"(","sentences":[{"sentiment":[0.1,0.9,0.0],"entities":["Nancy Pelosi"]}],)"
           R"("citation_urls":["https://www.other.com/x"],"all_link_urls":[]})";
}

SignalTable random_table(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SignalTable table;
    for (std::size_t i = 0; i < n; ++i) {
        SignalVector v;
        v.domain = "source" + std::to_string(i) + ".com";
        v.f_r = u(rng);
        v.f_p = u(rng);
        v.f_e = u(rng);
        v.f_b = u(rng) / 3.0;
        v.f_s = u(rng) < 0.1;
        v.f_a = u(rng) < 0.1;
        v.raw.pagerank = u(rng) * 1e-4;
        if (i % 3) v.raw.alexa_mean = std::floor(u(rng) * 1e6);
        v.raw.entities = static_cast<std::uint64_t>(u(rng) * 5000);
        if (i % 4) v.raw.gap = u(rng) - 0.5;
        if (i % 5) v.raw.bot = u(rng);
        if (i % 2) v.raw.ads = u(rng) * 7;
        table.emplace(v.domain, v);
    }
    return table;
}

} // namespace

TEST(LoadArticles, MalformedLineIsSkippedWithDiagnostic) {
    TempDir dir;
    const auto path = dir.file("a.jsonl");
    write_file(path, article_line(1) + "\n{not json\n" + article_line(2) + "\n");
    LoadReport report;
    const auto articles = load_articles(path, &report);
    ASSERT_EQ(articles.size(), 2u);
    EXPECT_EQ(report.records, 2u);
    EXPECT_EQ(report.skipped, 1u);
    ASSERT_EQ(report.diagnostics.size(), 1u);
    EXPECT_NE(report.diagnostics[0].find(":2:"), std::string::npos);
}

TEST(LoadArticles, SchemaViolationsAreSkipped) {
    TempDir dir;
    const auto path = dir.file("a.jsonl");
    write_file(path, article_line(1) + "\n" +
                         R"({"article_id":"x","source_domain":"a.com","published_at":"2024-01-01","sentences":[{"sentiment":[0.5,0.6,0.0]}]})"
                         "\n" R"({"source_domain":"a.com","published_at":"2024-01-01"})" "\n" +
                         article_line(1) + "\n");
    LoadReport report;
    const auto articles = load_articles(path, &report);
    EXPECT_EQ(articles.size(), 1u);
    EXPECT_EQ(report.skipped, 3u); // bad triple, missing id, duplicate id
}

TEST(LoadArticles, EmptyFileGivesEmptyStream) {
    TempDir dir;
    const auto path = dir.file("empty.jsonl");
    write_file(path, "");
    LoadReport report;
    EXPECT_TRUE(load_articles(path, &report).empty());
    EXPECT_EQ(report.skipped, 0u);
}

TEST(LoadArticles, TenRecordsInOrder) {
    TempDir dir;
    const auto path = dir.file("ten.jsonl");
    std::string text;
    for (int i = 0; i < 10; ++i) text += article_line(i, i % 2 ? "www.b.co.uk" : "a.com") + "\n";
    write_file(path, text);
    const auto articles = load_articles(path);
    ASSERT_EQ(articles.size(), 10u);
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(articles[i].article_id, "a" + std::to_string(i));
        EXPECT_EQ(articles[i].source_domain, i % 2 ? "b.co.uk" : "a.com");
    }
    EXPECT_EQ(articles[3].sentences.at(0).entity_mentions.at(0), "Nancy Pelosi");
}

TEST(LoadArticles, MissingFileIsFatal) {
    EXPECT_THROW(load_articles("/nonexistent/dir/articles.jsonl"), IoError);
}

TEST(LoadArticles, DeterministicAndRoundTripsThroughJson) {
    TempDir dir;
    const auto path = dir.file("a.jsonl");
    std::string text;
    for (int i = 0; i < 5; ++i) text += article_line(i) + "\n";
    write_file(path, text);
    const auto first = load_articles(path);
    const auto second = load_articles(path);
    ASSERT_EQ(first.size(), second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_EQ(to_json(first[i]), to_json(second[i]));
        EXPECT_EQ(to_json(article_from_json(to_json(first[i]), {})), to_json(first[i]));
    }
}

TEST(LoadTweets, DropsTweetsWithoutTrackedTargets) {
    TempDir dir;
    const auto path = dir.file("t.jsonl");
    write_file(path,
               R"({"tweet_id":"1","user_id":"u1","posted_at":"2024-01-01","urls":["https://www.a.com/x","https://t.co/abc"]})" "\n"
               R"({"tweet_id":"2","user_id":"u2","posted_at":"2024-01-01","urls":["https://elsewhere.org/"]})" "\n"
               R"({"tweet_id":"3","user_id":"u3","posted_at":"2024-01-01","urls":["not a url"]})" "\n");
    LoadReport report;
    const auto tweets = load_tweets(path, &report, {}, {"a.com"});
    ASSERT_EQ(tweets.size(), 1u);
    EXPECT_EQ(tweets[0].target_domains, std::vector<std::string>{"a.com"});
    EXPECT_EQ(report.dropped, 2u);
}

TEST(LoadProfiles, ReadsCountsAndRejectsNegatives) {
    TempDir dir;
    const auto path = dir.file("p.jsonl");
    write_file(path,
               R"({"user_id":"u1","follower_count":10,"followee_count":20,"verified":true,"favourites_count":1,"listed_count":2,"description_length":3,"geo_enabled":false,"has_location":true,"has_time_zone":false,"default_profile":true,"default_profile_image":false})" "\n"
               R"({"user_id":"u2","follower_count":-1,"followee_count":0})" "\n");
    LoadReport report;
    const auto profiles = load_profiles(path, &report);
    ASSERT_EQ(profiles.size(), 1u);
    EXPECT_EQ(profiles[0].followee_count, 20u);
    EXPECT_TRUE(profiles[0].verified);
    EXPECT_TRUE(profiles[0].default_profile);
    EXPECT_EQ(report.skipped, 1u);
}

TEST(LoadLabels, AllLabelKinds) {
    TempDir dir;
    write_file(dir.file("bias.csv"), "domain,label\nwww.a.com,Left-Center\nb.com,Right\nc.com,satire\n");
    write_file(dir.file("bots.csv"), "user_id,label\nu1,bot\nu2,human\n");
    write_file(dir.file("expert.csv"), "# topic=Health\n# group=US\nrank,domain\n2,b.com\n1,a.com\n3,a.com\n");
    write_file(dir.file("pop.csv"), "domain,date,rank\na.com,2024-01-02,300\na.com,2024-01-01,100\nb.com,2024-01-01,0\n");
    std::vector<LoadReport> reports;
    const auto labels = load_labels({dir.file("bias.csv"), dir.file("bots.csv"), {{"panel", dir.file("expert.csv")}},
                                     dir.file("pop.csv")},
                                    &reports);
    EXPECT_EQ(labels.bias_labels.size(), 2u);
    EXPECT_EQ(labels.bias_labels.at("a.com"), Lean::Left);
    EXPECT_EQ(labels.bot_labels.at("u1"), BotLabel::Bot);
    ASSERT_EQ(labels.expert_rankings.size(), 1u);
    EXPECT_EQ(labels.expert_rankings[0].topic, "Health");
    EXPECT_EQ(labels.expert_rankings[0].group, "US");
    EXPECT_EQ(labels.expert_rankings[0].domains, (std::vector<std::string>{"a.com", "b.com"}));
    ASSERT_EQ(labels.popularity_feed.at("a.com").size(), 2u);
    EXPECT_EQ(labels.popularity_feed.at("a.com")[0].rank, 100u); // sorted by date
    EXPECT_EQ(labels.popularity_feed.count("b.com"), 0u);
    ASSERT_EQ(reports.size(), 4u);
    EXPECT_EQ(reports[0].skipped, 1u); // unknown lean
    EXPECT_EQ(reports[2].skipped, 1u); // duplicate expert domain
    EXPECT_EQ(reports[3].skipped, 1u); // rank 0
}

TEST(LoadEntityParties, TabSeparatedWithWings) {
    TempDir dir;
    write_file(dir.file("e.tsv"), "entity\tparty\twing\nNancy Pelosi\tDemocratic\tleft\nMitch McConnell\tRepublican\tright\nbad line\n");
    LoadReport report;
    const auto dict = load_entity_parties(dir.file("e.tsv"), &report);
    EXPECT_EQ(dict.entity_count(), 2u);
    EXPECT_EQ(dict.wing_of("Democratic"), Wing::Left);
    EXPECT_EQ(report.skipped, 1u);
}

TEST(Csv, SplitHandlesQuotes) {
    EXPECT_EQ(split_csv(R"(a,"b,c","d""e",)"), (std::vector<std::string>{"a", "b,c", "d\"e", ""}));
    EXPECT_EQ(split_csv("x\ty", '\t'), (std::vector<std::string>{"x", "y"}));
}

TEST(Csv, FormatDoubleRoundTrips) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) / (1 + i);
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(parse_double(format_double(std::numeric_limits<double>::denorm_min())),
              std::numeric_limits<double>::denorm_min());
}

TEST(Snapshot, FiveSourceRoundTrip) {
    TempDir dir;
    const auto table = random_table(5, 1);
    snapshot_signals(table, dir.file("s.jsonl"));
    EXPECT_EQ(read_signal_snapshot(dir.file("s.jsonl")), table);
}

TEST(Snapshot, RoundTripIsBitExact) {
    TempDir dir;
    const auto table = random_table(200, 2);
    snapshot_signals(table, dir.file("s.jsonl"));
    const auto back = read_signal_snapshot(dir.file("s.jsonl"));
    ASSERT_EQ(back.size(), table.size());
    for (const auto& [domain, v] : table) {
        const auto& w = back.at(domain);
        EXPECT_EQ(std::bit_cast<std::uint64_t>(w.f_r), std::bit_cast<std::uint64_t>(v.f_r));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(w.raw.pagerank), std::bit_cast<std::uint64_t>(v.raw.pagerank));
        EXPECT_EQ(w, v);
    }
}

TEST(Snapshot, UnwritablePathIsIoError) {
    TempDir dir;
    // A path below a regular file cannot be created, even with elevated rights.
    write_file(dir.file("blocker"), "x");
    EXPECT_THROW(snapshot_signals(random_table(5, 1), dir.file("blocker") + "/s.jsonl"), IoError);
}

TEST(Snapshot, SixHundredSourcesByteStable) {
    TempDir dir;
    const auto table = random_table(600, 3);
    snapshot_signals(table, dir.file("a.jsonl"));
    snapshot_signals(table, dir.file("b.jsonl"));
    EXPECT_EQ(read_file(dir.file("a.jsonl")), read_file(dir.file("b.jsonl")));
    EXPECT_EQ(file_digest(dir.file("a.jsonl")), file_digest(dir.file("b.jsonl")));
}

TEST(Digest, KnownSha256) {
    EXPECT_EQ(string_digest("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_THROW(file_digest("/nonexistent/file"), IoError);
}
