#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "newsrank/signal_vector.hpp"
#include "newsrank/types.hpp"

namespace newsrank {

// ---------------------------------------------------------------------------
// Breadth
// ---------------------------------------------------------------------------

/// Distinct normalized entity names across the articles.
std::uint64_t unique_entities(std::span<const ArticleRecord> articles);

/// Streaming per-domain distinct-entity sets.
class EntityCounter {
public:
    void add(const ArticleRecord& article);
    void merge(const EntityCounter& other);
    std::map<std::string, std::uint64_t> counts() const;

private:
    std::map<std::string, std::set<std::string>> entities_;
};

/// Min-max of log(1 + count). When every count is equal, sources with
/// entities get 1 and sources without get 0.
std::map<std::string, double> normalize_breadth(const std::map<std::string, std::uint64_t>& counts);

// ---------------------------------------------------------------------------
// Popularity
// ---------------------------------------------------------------------------

inline constexpr double kMaxPopularityRank = 1'000'000.0;
inline constexpr double kPopularityTierWidth = 50'000.0;

struct PopularityScore {
    double mean_rank = 0.0;
    int tier = 0;     // 1..20
    double f_p = 1.0; // 0 most popular, 1 least
    std::size_t days = 0;
};

/// ceil(mean / 50000), clamped to [1, 20].
int popularity_tier(double mean_rank);

/// Mean of the daily ranks in the `window_days` days ending at
/// `window_end` (inclusive; defaults to the latest entry). Nullopt when
/// the window holds no entries.
std::optional<PopularityScore> popularity(std::span<const PopularityEntry> entries, int window_days = 30,
                                          std::optional<Timestamp> window_end = std::nullopt);

// ---------------------------------------------------------------------------
// Percentile flags
// ---------------------------------------------------------------------------

/// Nearest-rank percentile: the smallest sample with at least p percent
/// of the samples at or below it. `values` need not be sorted.
double nearest_rank_percentile(std::vector<double> values, double p);

struct FlagResult {
    std::map<std::string, bool> flags;
    std::optional<double> threshold; // absent when the population is too small
    std::vector<std::string> warnings;
};

/// Flags the domains scoring strictly above the p-th nearest-rank
/// percentile. Below `min_population` scored domains nothing is flagged.
FlagResult threshold_flags(const std::map<std::string, double>& scores, double percentile = 95.0,
                           std::size_t min_population = 20);

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

struct SignalInputs {
    std::map<std::string, double> reputation_raw;
    std::map<std::string, double> reputation; // normalized, defines the population
    std::map<std::string, std::uint64_t> entities;
    std::map<std::string, PopularityScore> popularity;
    std::map<std::string, double> bias_gap;   // left minus right, scored political sources only
    std::set<std::string> non_political;      // forced to f_b = 0
    std::map<std::string, double> bot_scores; // already filtered for support
    std::map<std::string, double> ads_scores; // already filtered for support
};

struct FlagOptions {
    double percentile = 95.0;
    std::size_t min_population = 20;
};

struct AssembleResult {
    SignalTable table;
    std::vector<std::string> residue; // domains seen in some table but absent from reputation
    std::vector<std::string> warnings;
};

/// Joins every table onto the reputation population. Missing values take
/// the defaults f_b = 0, f_e = 0, f_p = 1 and unset flags.
AssembleResult assemble(const SignalInputs& inputs, const FlagOptions& options = {});

void write_signals_csv(const SignalTable& table, const std::string& path);

} // namespace newsrank
