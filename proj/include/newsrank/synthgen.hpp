#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "newsrank/adsmeter.hpp"
#include "newsrank/types.hpp"

namespace newsrank {

struct SynthConfig {
    std::size_t source_count = 500;
    int days = 90;
    std::uint64_t seed = 42;
    std::string start_date = "2024-01-01";

    /// Planted quality q = u^quality_shape for uniform u; larger shapes
    /// give heavier concentration near zero.
    double quality_shape = 3.0;
    /// Citation targets are drawn with probability proportional to q^exponent.
    double citation_exponent = 2.0;
    double citations_per_article = 1.5;
    double self_link_rate = 0.3;

    /// Daily article rate rises linearly with quality between these bounds.
    double min_articles_per_day = 0.1;
    double max_articles_per_day = 3.0;
    /// When set, every source gets exactly this many articles.
    std::optional<std::size_t> articles_per_source;
    std::size_t sentences_per_article = 4;
    double political_mention_rate = 0.8;
    double entities_per_sentence = 1.0;
    std::size_t entity_pool = 3000;

    /// Sentiment offset toward the source's favoured wing.
    double bias_skew = 0.1;

    std::size_t bot_users = 400;
    std::size_t human_users = 2000;
    double labeled_user_fraction = 0.5;
    double min_tweets_per_source = 20.0;
    double max_tweets_per_source = 80.0;
    /// Upper bound of ordinary sources' bot fraction (drawn as u^2 times this).
    double max_bot_fraction = 0.6;

    std::size_t pages_per_source = 6;
    double heavy_ads_fraction = 0.05;

    /// Pairs of identical sources differing only in tweet authorship: one
    /// twin has bot fraction `twin_bot_fraction`, the other
    /// `twin_clean_bot_fraction`.
    std::size_t twin_pairs = 10;
    double twin_bot_fraction = 0.9;
    double twin_clean_bot_fraction = 0.02;
    double twin_min_quality = 0.3;
    double twin_max_quality = 0.9;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

struct PlantedSource {
    std::string domain;
    double quality = 0.0;
    Lean lean = Lean::None;
    double bot_fraction = 0.0;
    double ads_mean = 0.0;
    std::string twin; // partner domain for twins
    bool bot_twin = false;
};

struct SynthCorpus {
    std::vector<SourceRecord> sources;
    std::vector<ArticleRecord> articles;
    std::vector<TweetRecord> tweets;
    std::vector<UserProfile> profiles;
    std::map<std::string, BotLabel> bot_labels;
    std::vector<AdPage> pages;
    EntityPartyDictionary dictionary;
    std::map<std::string, std::vector<PopularityEntry>> popularity;
    std::map<std::string, Lean> bias_labels;
    ExpertRanking planted_ranking; // every source, best planted quality first
    std::vector<PlantedSource> truth;

    /// Citation target draws per source, excluding the extra self-links.
    std::map<std::string, std::uint64_t> citation_draws;
};

SynthCorpus generate(const SynthConfig& config);

/// Planted quality order: domains by descending quality, ties by domain.
std::vector<std::string> planted_order(const SynthCorpus& corpus);

struct SynthPaths {
    std::string sources, articles, tweets, profiles, bot_labels, pages, entities, popularity, bias_labels,
        expert_planted, truth;
};

/// Writes every corpus file into `dir` (created if needed).
SynthPaths write_corpus(const SynthCorpus& corpus, const std::string& dir);

/// Profile generators for the two behavioural regimes. With `separable`,
/// the regimes do not overlap in the followee/follower ratio.
UserProfile synth_profile(std::string user_id, bool bot, std::mt19937_64& rng, bool separable = false);

struct BotDataset {
    std::vector<UserProfile> profiles;
    std::vector<int> is_bot;
};

BotDataset make_bot_dataset(std::size_t per_class, std::uint64_t seed, bool separable = true);

} // namespace newsrank
