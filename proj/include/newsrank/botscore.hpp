#pragma once

#include <array>
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

inline constexpr int kBotFeatureCount = 14;

/// Profile features, in order: followers, followees, followee/follower
/// ratio, log of the larger count, ratio times log, verified, favourites,
/// listed, description length, geo, location, time zone, default
/// profile, default profile image.
using BotFeatureVector = Eigen::Matrix<double, kBotFeatureCount, 1>;

extern const std::array<std::string_view, kBotFeatureCount> kBotFeatureNames;

/// Zero counts are guarded: ratio = followees / max(followers, 1),
/// log term = log(max(followers, followees, 1)).
BotFeatureVector extract_features(const UserProfile& profile);

/// Rows are samples, columns the 14 features.
Eigen::MatrixXd feature_matrix(std::span<const UserProfile> profiles);

/// Any calibrated classifier producing a bot probability.
class BotClassifier {
public:
    virtual ~BotClassifier() = default;
    virtual double score(const BotFeatureVector& features) const = 0;
};

/// Logistic regression over z-scored features.
class BotModel final : public BotClassifier {
public:
    BotModel();
    BotModel(Eigen::VectorXd mean, Eigen::VectorXd stddev, Eigen::VectorXd coef, double intercept);

    double score(const BotFeatureVector& features) const override;
    /// Logit before the sigmoid.
    double logit(const BotFeatureVector& features) const;

    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::VectorXd& stddev() const { return stddev_; }
    const Eigen::VectorXd& coef() const { return coef_; }
    double intercept() const { return intercept_; }

    /// Flat text: kind line, then mean, stddev, coef and intercept lines.
    void save(const std::string& path) const;
    static BotModel load(const std::string& path);

    friend bool operator==(const BotModel& a, const BotModel& b) {
        return a.mean_ == b.mean_ && a.stddev_ == b.stddev_ && a.coef_ == b.coef_ && a.intercept_ == b.intercept_;
    }

private:
    Eigen::VectorXd mean_;
    Eigen::VectorXd stddev_;
    Eigen::VectorXd coef_;
    double intercept_ = 0.0;
};

struct TrainConfig {
    double ridge = 1e-4;
    int max_epochs = 2000;
    double loss_tol = 1e-8;
    /// Downsample the majority class to the minority size before fitting.
    bool balance = true;
    std::uint64_t seed = 7;
};

struct TrainingReport {
    std::vector<double> loss_history; // objective after each epoch
    int epochs = 0;
    bool converged = false;
    std::size_t bots = 0;
    std::size_t humans = 0;
};

/// Fits logistic regression by full-batch gradient descent with
/// backtracking line search. `is_bot` holds 1 for bots, 0 for humans.
/// Throws ConfigError on empty or single-class input.
BotModel train(const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot, const TrainConfig& config = {},
               TrainingReport* report = nullptr);

struct DataSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> tune;
    std::vector<std::size_t> test;
};

/// Seeded shuffle of [0, n) cut into train / tune / test fractions.
DataSplit split_dataset(std::size_t n, std::uint64_t seed, double train_fraction = 0.7, double tune_fraction = 0.1);

struct ClassifierMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

ClassifierMetrics evaluate(const BotClassifier& model, const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot,
                           double threshold = 0.5);

struct TunedModel {
    BotModel model;
    double ridge = 0.0;
    ClassifierMetrics test;
    TrainingReport training;
};

/// 70/10/20 protocol: fits every ridge value on the train split, keeps
/// the one with the lowest tune-split log loss, reports test-split metrics.
TunedModel train_with_tuning(const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot,
                             const std::vector<double>& ridge_grid, const TrainConfig& config = {});

double score_user(const BotClassifier& model, const BotFeatureVector& features);

/// Two models combine by taking the larger probability.
inline double combine_scores(double a, double b) { return a > b ? a : b; }

struct SourceBotScore {
    std::string domain;
    double score = 0.0;
    std::size_t tweet_count = 0;
    std::size_t distinct_user_count = 0;
};

/// Tweet-weighted mean of the authors' scores. Nullopt for no tweets;
/// throws ConfigError when an author has no score.
std::optional<SourceBotScore> source_bot_score(std::string domain, std::span<const TweetRecord> tweets,
                                               const std::map<std::string, double>& user_scores);

/// Per-domain scores over a tweet stream; a tweet counts once for each of
/// its distinct target domains. Tweets by unscored users are ignored.
std::map<std::string, SourceBotScore> source_bot_scores(std::span<const TweetRecord> tweets,
                                                        const std::map<std::string, double>& user_scores);

void write_source_bots_csv(const std::map<std::string, SourceBotScore>& scores, const std::string& path);
std::map<std::string, SourceBotScore> read_source_bots_csv(const std::string& path);

} // namespace newsrank
