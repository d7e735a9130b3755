#include <gtest/gtest.h>

#include "newsrank/error.hpp"
#include "newsrank/types.hpp"

using namespace newsrank;

TEST(Timestamp, ParsesDateDateTimeAndEpoch) {
    EXPECT_EQ(parse_timestamp("1970-01-02").time_since_epoch().count(), 86400);
    EXPECT_EQ(parse_timestamp("2024-03-01T12:30:05Z"), parse_timestamp("1709296205"));
    EXPECT_EQ(format_timestamp(parse_timestamp("2024-02-29T23:59:59Z")), "2024-02-29T23:59:59Z");
    EXPECT_EQ(format_date(parse_timestamp("2024-02-29T23:59:59Z")), "2024-02-29");
}

TEST(Timestamp, RejectsGarbage) {
    EXPECT_THROW(parse_timestamp(""), ParseError);
    EXPECT_THROW(parse_timestamp("yesterday"), ParseError);
    EXPECT_THROW(parse_timestamp("2024-13-01"), ParseError);
    EXPECT_THROW(parse_timestamp("2024-01-01T10:00:00+02:00"), ParseError);
}

TEST(Timestamp, FormatParseRoundTrip) {
    for (std::int64_t s : {0LL, 951782400LL, 1700000000LL, 4102444799LL}) {
        const Timestamp t{std::chrono::seconds(s)};
        EXPECT_EQ(parse_timestamp(format_timestamp(t)), t);
    }
}

TEST(Enums, TopicClosedSet) {
    for (auto t : {Topic::General, Topic::World, Topic::Nation, Topic::Sport, Topic::Entertainment, Topic::Business,
                   Topic::Health, Topic::Technology, Topic::Unknown}) {
        EXPECT_EQ(parse_topic(to_string(t)), t);
    }
    EXPECT_EQ(parse_topic(" SPORTS "), Topic::Sport);
    EXPECT_THROW(parse_topic("weather"), ParseError);
}

TEST(Enums, LeanFoldsCenterLabels) {
    EXPECT_EQ(parse_lean("Left-Center"), Lean::Left);
    EXPECT_EQ(parse_lean("right bias"), Lean::Right);
    EXPECT_EQ(parse_lean("none"), Lean::None);
    EXPECT_THROW(parse_lean("satire"), ParseError);
    EXPECT_EQ(parse_wing("RIGHT"), Wing::Right);
    EXPECT_EQ(parse_bot_label("1"), BotLabel::Bot);
    EXPECT_EQ(parse_bot_label("human"), BotLabel::Human);
}

TEST(Sentiment, Validity) {
    EXPECT_TRUE(SentimentDistribution(0.1, 0.9, 0.0).is_valid());
    EXPECT_TRUE(SentimentDistribution().is_valid());
    EXPECT_FALSE(SentimentDistribution(0.5, 0.6, 0.0).is_valid());
    EXPECT_FALSE(SentimentDistribution(-0.1, 1.1, 0.0).is_valid());
}

TEST(Dictionary, LookupIsTrimmedAndCaseFolded) {
    EntityPartyDictionary dict;
    dict.add("Nancy Pelosi", "Democratic", Wing::Left);
    dict.add("Mitch McConnell", "Republican", Wing::Right);
    ASSERT_NE(dict.party_of("  nancy   PELOSI "), nullptr);
    EXPECT_EQ(*dict.party_of("nancy pelosi"), "Democratic");
    EXPECT_EQ(dict.party_of("Nancy"), nullptr);
    EXPECT_EQ(dict.wing_of("Republican"), Wing::Right);
    EXPECT_EQ(dict.wing_of("Green"), Wing::Other);
    EXPECT_THROW(dict.add("   ", "X", Wing::Other), ParseError);
}
