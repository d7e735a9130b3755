#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "newsrank/types.hpp"

namespace newsrank {

// ---------------------------------------------------------------------------
// Rank correlation
// ---------------------------------------------------------------------------

/// 1-based ranks; tied values share the mean of their positions.
Eigen::VectorXd average_ranks(std::span<const double> values);

/// Pearson correlation; nullopt if either input has zero variance.
std::optional<double> pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

enum class PValueMethod {
    Auto,             ///< exact permutation for n <= 8, t approximation above
    TApprox,          ///< Student t with n - 2 degrees of freedom
    ExactPermutation, ///< enumerate all n! rank permutations (n <= 10)
};

inline constexpr std::size_t kExactPermutationMaxN = 8;

struct SpearmanResult {
    double rho = 0.0;
    double p_value = 1.0; // two-sided
    std::size_t n = 0;
};

/// Spearman correlation with tie-averaged ranks. Throws ConfigError for
/// mismatched lengths or n < 3; nullopt when a side has no rank variance.
std::optional<SpearmanResult> spearman(std::span<const double> xs, std::span<const double> ys,
                                       PValueMethod method = PValueMethod::Auto);

// ---------------------------------------------------------------------------
// Sampling and ranking quality
// ---------------------------------------------------------------------------

inline const std::vector<std::size_t> kDefaultSampleBoundaries = {100, 400, 1600, 6400, 25600};

struct StratifiedSample {
    /// Band k holds the sampled domains ranked in (b[k-1], b[k]]; the last
    /// band is everything past the final boundary.
    std::vector<std::vector<std::string>> bands;
    std::vector<std::string> warnings;

    std::vector<std::string> all() const;
};

StratifiedSample stratified_sample(const std::vector<std::string>& ranking,
                                   const std::vector<std::size_t>& boundaries = kDefaultSampleBoundaries,
                                   std::size_t per_tier = 100, std::uint64_t seed = 1);

struct QualityResult {
    double q = 0.0;
    double q_n = 0.0;
    std::size_t used = 0;
    std::vector<std::string> excluded; // members absent from the ranking
};

/// Reciprocal-rank quality of `members` against `ranking`, normalized
/// between the bottom-|S| and top-|S| sets of the same size.
QualityResult quality(const std::vector<std::string>& members, const std::vector<std::string>& ranking);

/// Quality from 1-based ranks directly, against a ranking of m sources.
QualityResult quality_from_ranks(const std::vector<std::size_t>& ranks, std::size_t m);

// ---------------------------------------------------------------------------
// Label comparisons
// ---------------------------------------------------------------------------

struct AccuracyResult {
    double accuracy = 0.0;
    std::size_t evaluated = 0;
    std::size_t correct = 0;
};

/// Fraction of labeled sources with a matching prediction. A None
/// prediction counts as wrong; unpredicted sources are skipped.
AccuracyResult bias_accuracy(const std::map<std::string, Lean>& predicted, const std::map<std::string, Lean>& labels);

struct ComparisonReport {
    std::string name;
    std::string topic = "All";
    std::string group = "All";
    std::size_t common = 0; // T_n
    std::size_t total = 0;  // N
    std::optional<double> rho;
    std::optional<double> p_value;
    double quality = 0.0;
    std::string sampling_frame = "expert";
};

/// Spearman between expert and internal ranks over the common sources,
/// plus the quality of the expert list within the internal ranking.
ComparisonReport compare_external(const std::vector<std::string>& internal, const ExpertRanking& expert);

void write_comparison_csv(const std::vector<ComparisonReport>& reports, const std::string& path);

} // namespace newsrank
