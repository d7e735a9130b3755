#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newsrank/adsmeter.hpp"
#include "newsrank/bias.hpp"
#include "newsrank/citegraph.hpp"
#include "newsrank/ranker.hpp"
#include "newsrank/synthgen.hpp"

namespace newsrank {

struct InputPaths {
    std::string articles;
    std::string sources;
    std::string entities;
    std::string tweets;
    std::string profiles;
    std::string bot_labels;
    std::string bot_model; // pretrained model; skips training when set
    std::string pages;
    std::string popularity;
    std::string bias_labels;
};

struct PipelineConfig {
    InputPaths input;
    std::vector<std::pair<std::string, std::string>> experts; // (name, path)

    LinkScope link_scope = LinkScope::ArticleCitations;
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
    std::vector<std::size_t> tier_boundaries = kDefaultTierBoundaries;
    bool tracked_only = true;

    std::vector<std::string> keep_subdomains;
    std::string public_suffix_file;

    AggregationMethod bias_method = AggregationMethod::SentenceDistribution;
    double bias_theta = 0.0;

    std::vector<double> ridge_grid = {1e-4, 1e-3, 1e-2, 1e-1};
    int bot_max_epochs = 2000;
    std::size_t bot_min_tweets = 10;

    std::size_t ads_min_pages = 5;
    AdPatternSet ad_patterns;

    double percentile = 95.0;
    std::size_t min_population = 20;
    int popularity_window_days = 30;

    RankingConfig ranking;

    std::vector<std::size_t> eval_boundaries = {100, 400, 1600, 6400, 25600};
    std::size_t eval_per_tier = 100;

    std::uint64_t seed = 42;
    std::string output_dir = "out";

    bool synth_enabled = false;
    SynthConfig synth;

    /// Effective key/value pairs after defaults and overrides.
    std::map<std::string, std::string> values;

    /// SHA-256 over every effective value except the output directory.
    std::string hash() const;
};

/// Every recognised key with its default, one "key = value" line each,
/// grouped and commented. Suitable as a starting config file.
std::string default_config_text();

/// Parses "key = value" lines ('#' starts a comment). Unknown keys and
/// invalid values throw ConfigError naming the field. Relative input
/// paths are resolved against `base_dir`.
PipelineConfig parse_config(const std::string& text, const std::string& base_dir = ".",
                            const std::map<std::string, std::string>& overrides = {});

PipelineConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides = {});

/// Defaults only (plus overrides), with paths relative to the working directory.
PipelineConfig default_config(const std::map<std::string, std::string>& overrides = {});

} // namespace newsrank
