#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsrank/domain.hpp"
#include "newsrank/signal_vector.hpp"
#include "newsrank/types.hpp"

namespace newsrank {

/// Outcome of reading one input file. Invalid records are skipped and
/// described in `diagnostics`; they never abort a load.
struct LoadReport {
    std::string path;
    std::size_t records = 0;
    std::size_t skipped = 0;
    std::size_t dropped = 0; // valid but filtered out (e.g. tweets without tracked URLs)
    std::vector<std::string> diagnostics;

    void skip(std::size_t line, const std::string& why);
};

// ---------------------------------------------------------------------------
// Line-delimited JSON records
//
// articles:  {"article_id", "source_domain", "url", "published_at",
//             "sentences": [{"text"?, "sentiment": [pos, neu, neg], "entities": [..]}],
//             "citation_urls": [..], "all_link_urls": [..]}
// tweets:    {"tweet_id", "user_id", "posted_at", "urls": [..]}
// profiles:  {"user_id", "follower_count", "followee_count", "verified",
//             "favourites_count", "listed_count", "description_length",
//             "geo_enabled", "has_location", "has_time_zone",
//             "default_profile", "default_profile_image"}
// ---------------------------------------------------------------------------

ArticleRecord article_from_json(const nlohmann::json& j, const DomainCanonicalizer& canon);
nlohmann::json to_json(const ArticleRecord& article);

TweetRecord tweet_from_json(const nlohmann::json& j, const DomainCanonicalizer& canon);
nlohmann::json to_json(const TweetRecord& tweet);

UserProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UserProfile& profile);

/// Reads a line-delimited file one JSON value at a time. Throws IoError
/// if the file cannot be opened; blank lines are ignored.
class JsonLineReader {
public:
    explicit JsonLineReader(const std::string& path);

    /// Next parsed line, or nullopt at end of file. Lines that are not
    /// valid JSON are recorded in the report and skipped.
    std::optional<nlohmann::json> next();

    std::size_t line() const { return line_; }
    LoadReport& report() { return report_; }
    const LoadReport& report() const { return report_; }

private:
    std::ifstream in_;
    std::size_t line_ = 0;
    LoadReport report_;
};

class ArticleReader {
public:
    explicit ArticleReader(const std::string& path, DomainCanonicalizer canon = {});

    std::optional<ArticleRecord> next();
    const LoadReport& report() const { return reader_.report(); }

private:
    JsonLineReader reader_;
    DomainCanonicalizer canon_;
    std::unordered_set<std::string> seen_ids_;
};

class TweetReader {
public:
    /// When `tracked` is non-empty, target domains outside it are removed
    /// and tweets left without targets are dropped.
    explicit TweetReader(const std::string& path, DomainCanonicalizer canon = {},
                         std::set<std::string, std::less<>> tracked = {});

    std::optional<TweetRecord> next();
    const LoadReport& report() const { return reader_.report(); }

private:
    JsonLineReader reader_;
    DomainCanonicalizer canon_;
    std::set<std::string, std::less<>> tracked_;
    std::unordered_set<std::string> seen_ids_;
};

std::vector<ArticleRecord> load_articles(const std::string& path, LoadReport* report = nullptr,
                                         const DomainCanonicalizer& canon = {});
std::vector<TweetRecord> load_tweets(const std::string& path, LoadReport* report = nullptr,
                                     const DomainCanonicalizer& canon = {},
                                     const std::set<std::string, std::less<>>& tracked = {});
std::vector<UserProfile> load_profiles(const std::string& path, LoadReport* report = nullptr);

/// Writes one JSON value per line.
class JsonLineWriter {
public:
    explicit JsonLineWriter(const std::string& path);
    void write(const nlohmann::json& value);
    void close();

private:
    std::string path_;
    std::ofstream out_;
};

// ---------------------------------------------------------------------------
// Delimited text
// ---------------------------------------------------------------------------

/// Splits one CSV line. Double-quoted fields may contain separators and
/// doubled quotes.
std::vector<std::string> split_csv(std::string_view line, char sep = ',');

/// Shortest decimal form that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& cell(std::string_view text);
    CsvWriter& cell(double value);
    CsvWriter& cell(std::int64_t value);
    CsvWriter& cell(std::uint64_t value);
    CsvWriter& cell(int value) { return cell(static_cast<std::int64_t>(value)); }
    CsvWriter& empty_cell();
    void end_row();
    void close();

private:
    std::string path_;
    std::ofstream out_;
    bool row_started_ = false;
};

/// Tab-separated (entity, party, wing) lines; wing is left|right|other.
EntityPartyDictionary load_entity_parties(const std::string& path, LoadReport* report = nullptr);

/// CSV (domain, country, language, topic, is_political).
std::vector<SourceRecord> load_sources(const std::string& path, LoadReport* report = nullptr,
                                       const DomainCanonicalizer& canon = {});

/// CSV (domain, label) with labels Left/Right (Left-center and
/// Right-center fold into their wing).
std::map<std::string, Lean> load_bias_labels(const std::string& path, LoadReport* report = nullptr,
                                             const DomainCanonicalizer& canon = {});

/// CSV (user_id, label) with labels bot/human.
std::map<std::string, BotLabel> load_bot_labels(const std::string& path, LoadReport* report = nullptr);

/// Ordered CSV (rank, domain). Optional leading "# topic=..." and
/// "# group=..." lines set the list's metadata. Duplicate domains are
/// skipped with a diagnostic.
ExpertRanking load_expert_ranking(const std::string& path, std::string name, LoadReport* report = nullptr,
                                  const DomainCanonicalizer& canon = {});

/// CSV (domain, date, rank) with ranks in [1, 1000000].
std::map<std::string, std::vector<PopularityEntry>> load_popularity(const std::string& path,
                                                                   LoadReport* report = nullptr,
                                                                   const DomainCanonicalizer& canon = {});

struct LabelPaths {
    std::string bias_labels;
    std::string bot_labels;
    std::vector<std::pair<std::string, std::string>> expert_rankings; // (name, path)
    std::string popularity;
};

/// Loads every non-empty path of `paths`.
ExternalLabels load_labels(const LabelPaths& paths, std::vector<LoadReport>* reports = nullptr,
                           const DomainCanonicalizer& canon = {});

// ---------------------------------------------------------------------------
// Signal snapshots: one JSON record per domain, sorted by domain.
// ---------------------------------------------------------------------------

void snapshot_signals(const SignalTable& table, const std::string& path);
SignalTable read_signal_snapshot(const std::string& path);

// ---------------------------------------------------------------------------

/// Lowercase hex SHA-256 of a file's bytes. Throws IoError if unreadable.
std::string file_digest(const std::string& path);
std::string string_digest(std::string_view bytes);

} // namespace newsrank
