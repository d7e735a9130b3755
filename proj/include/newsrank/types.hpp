#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace newsrank {

using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SSZ" or integer epoch seconds.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);
std::string format_date(Timestamp t);

enum class Topic { General, World, Nation, Sport, Entertainment, Business, Health, Technology, Unknown };

Topic parse_topic(std::string_view text);
std::string_view to_string(Topic topic);

enum class Wing { Left, Right, Other };
enum class Lean { Left, Right, None };
enum class BotLabel { Bot, Human };

Wing parse_wing(std::string_view text);
std::string_view to_string(Wing wing);
Lean parse_lean(std::string_view text);
std::string_view to_string(Lean lean);
BotLabel parse_bot_label(std::string_view text);

/// (positive, neutral, negative) probability triple.
class SentimentDistribution {
public:
    static constexpr double kTolerance = 1e-9;

    SentimentDistribution() : p_(0.0, 1.0, 0.0) {}
    SentimentDistribution(double pos, double neu, double neg) : p_(pos, neu, neg) {}
    explicit SentimentDistribution(const Eigen::Vector3d& p) : p_(p) {}

    double pos() const { return p_[0]; }
    double neu() const { return p_[1]; }
    double neg() const { return p_[2]; }
    const Eigen::Vector3d& vector() const { return p_; }

    bool is_valid() const {
        return p_.allFinite() && (p_.array() >= 0.0).all() && std::abs(p_.sum() - 1.0) <= kTolerance;
    }

    friend bool operator==(const SentimentDistribution& a, const SentimentDistribution& b) {
        return a.p_ == b.p_;
    }

private:
    Eigen::Vector3d p_;
};

struct SentenceAnnotation {
    std::optional<std::string> text;
    SentimentDistribution sentiment;
    std::vector<std::string> entity_mentions;
};

struct ArticleRecord {
    std::string article_id;
    std::string source_domain;
    std::string url;
    Timestamp published_at;
    std::vector<SentenceAnnotation> sentences;
    std::vector<std::string> citation_urls;
    std::vector<std::string> all_link_urls;
};

struct SourceRecord {
    std::string domain;
    std::string country = "unknown";
    std::string language = "unknown";
    Topic topic = Topic::Unknown;
    bool is_political = true;
};

struct TweetRecord {
    std::string tweet_id;
    std::string user_id;
    Timestamp posted_at;
    std::vector<std::string> target_domains;
};

struct UserProfile {
    std::string user_id;
    std::uint64_t follower_count = 0;
    std::uint64_t followee_count = 0;
    bool verified = false;
    std::uint64_t favourites_count = 0;
    std::uint64_t listed_count = 0;
    std::uint64_t description_length = 0;
    bool geo_enabled = false;
    bool has_location = false;
    bool has_time_zone = false;
    bool default_profile = false;
    bool default_profile_image = false;
};

/// Exact-match entity to party lookup on trimmed, case-folded names.
class EntityPartyDictionary {
public:
    static std::string normalize(std::string_view name);

    void add(std::string_view entity, std::string party, Wing wing);
    void set_wing(const std::string& party, Wing wing) { wings_[party] = wing; }

    const std::string* party_of(std::string_view entity) const;
    Wing wing_of(const std::string& party) const;

    std::size_t entity_count() const { return parties_.size(); }
    const std::map<std::string, Wing>& wings() const { return wings_; }
    const std::map<std::string, std::string, std::less<>>& entities() const { return parties_; }

private:
    std::map<std::string, std::string, std::less<>> parties_;
    std::map<std::string, Wing> wings_;
};

struct PopularityEntry {
    Timestamp date;
    std::uint32_t rank = 0;
};

struct ExpertRanking {
    std::string name;
    std::string topic = "All";
    std::string group = "All";
    std::vector<std::string> domains; // best first
};

struct ExternalLabels {
    std::map<std::string, Lean> bias_labels;
    std::map<std::string, BotLabel> bot_labels;
    std::vector<ExpertRanking> expert_rankings;
    std::map<std::string, std::vector<PopularityEntry>> popularity_feed;
};

} // namespace newsrank
