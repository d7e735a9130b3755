#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "newsrank/types.hpp"

namespace newsrank {

/// Sentiment aggregation scheme for a source's attitude toward a party.
enum class AggregationMethod {
    ArticleVote,          ///< AV: one one-hot vote per article
    ArticleDistribution,  ///< AD: one distribution per article
    SentenceDistribution, ///< SD: every mention-bearing sentence, weighted by mentions
};

AggregationMethod parse_aggregation_method(std::string_view text);
std::string_view to_string(AggregationMethod method);

/// Weighted sum of sentiment triples and its normalizer. Accumulators
/// merge by plain addition, so shards can be combined in any order.
struct PartyAccumulator {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    double weight = 0.0;
    std::uint64_t mentions = 0;

    void add(const Eigen::Vector3d& triple, double w) {
        sum += w * triple;
        weight += w;
    }
    void merge(const PartyAccumulator& other) {
        sum += other.sum;
        weight += other.weight;
        mentions += other.mentions;
    }
    /// Normalized triple, or nullopt when nothing was accumulated.
    std::optional<SentimentDistribution> distribution() const;
};

using PartyDistributions = std::map<std::string, SentimentDistribution>;

/// Mention-weighted mean of the article's sentence triples per party.
/// Parties never mentioned are absent.
PartyDistributions article_party_distribution(const ArticleRecord& article, const EntityPartyDictionary& dict);

/// One-hot vote: [1,0,0] when pos exceeds neg by more than 1e-9,
/// [0,0,1] for the mirror case, [0,1,0] otherwise.
SentimentDistribution article_vote(const SentimentDistribution& dist);

/// Per-source aggregation state for one method.
class SourceAggregator {
public:
    explicit SourceAggregator(AggregationMethod method) : method_(method) {}

    void add(const ArticleRecord& article, const EntityPartyDictionary& dict);
    void merge(const SourceAggregator& other);

    PartyDistributions distributions() const;
    std::map<std::string, std::uint64_t> mentions() const;
    AggregationMethod method() const { return method_; }

private:
    AggregationMethod method_;
    std::map<std::string, PartyAccumulator> parties_;
};

PartyDistributions aggregate(std::span<const ArticleRecord> articles, const EntityPartyDictionary& dict,
                             AggregationMethod method);

/// (pos - neg) / (pos + neg); nullopt when pos + neg = 0.
std::optional<double> bias_score(const SentimentDistribution& dist);

struct PartyBias {
    double score = 0.0;
    std::uint64_t mentions = 0;
};

struct LeanGap {
    Lean lean = Lean::None;
    double gap = 0.0;
    double f_b = 0.0;
    std::optional<double> left_score;
    std::optional<double> right_score;
};

/// Wing scores are mention-weighted means of party scores. A positive gap
/// (left minus right) beyond `theta` leans Left. When either wing has no
/// scored party the result is lean None with gap and f_b zero.
LeanGap lean_and_gap(const std::map<std::string, PartyBias>& parties, const EntityPartyDictionary& dict,
                     double theta = 0.0);

struct BiasResult {
    std::string domain;
    std::map<std::string, PartyBias> parties;
    LeanGap lean;
};

/// Bias of one source, from its articles, under `method`.
BiasResult score_source_bias(std::string domain, std::span<const ArticleRecord> articles,
                             const EntityPartyDictionary& dict, AggregationMethod method, double theta = 0.0);

/// Party biases from aggregated distributions; parties with pos + neg = 0
/// are left unscored.
std::map<std::string, PartyBias> party_biases(const PartyDistributions& dists,
                                              const std::map<std::string, std::uint64_t>& mentions);

// ---------------------------------------------------------------------------
// Lexicon baseline for unannotated text
// ---------------------------------------------------------------------------

class SentimentLexicon {
public:
    enum class Polarity { Positive, Negative };

    void add(std::string_view token, Polarity polarity);
    const Polarity* find(std::string_view token) const;

    /// Tab-separated (token, positive|negative) lines.
    static SentimentLexicon from_file(const std::string& path);

private:
    std::map<std::string, Polarity, std::less<>> tokens_;
};

/// Whitespace tokens, punctuation removed, case-folded. With p positive
/// and n negative hits: pos = p/(p+n+1), neg = n/(p+n+1).
SentimentDistribution naive_sentence_sentiment(std::string_view text, const SentimentLexicon& lexicon);

// ---------------------------------------------------------------------------

void write_bias_parties_csv(const std::vector<BiasResult>& results, const std::string& path);
void write_bias_sources_csv(const std::vector<BiasResult>& results, const std::string& path);

struct SourceBiasRow {
    std::optional<double> left;
    std::optional<double> right;
    std::optional<double> gap; // absent when a wing is unscored
    Lean lean = Lean::None;
};

std::map<std::string, SourceBiasRow> read_bias_sources_csv(const std::string& path);

} // namespace newsrank
