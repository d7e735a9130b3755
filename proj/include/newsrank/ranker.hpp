#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "newsrank/signal_vector.hpp"

namespace newsrank {

struct RankingConfig {
    /// Weights of f_r, f_p, f_e, f_b.
    Eigen::Vector4d weights = Eigen::Vector4d(1.65, -0.35, 0.05, -0.10);
    /// Multiplier applied once per set flag; must lie in (0, 1].
    double penalty = 0.95;

    void validate() const;
};

/// The continuous signals in weight order.
inline Eigen::Vector4d continuous_signals(const SignalVector& v) { return {v.f_r, v.f_p, v.f_e, v.f_b}; }

/// R = (W . F) * penalty^(f_s + f_a).
double consensus_score(const SignalVector& v, const RankingConfig& cfg = {});

/// Column order of the per-signal percentiles.
inline constexpr std::array<const char*, 6> kPercentileColumns = {"f_r_pct", "f_p_pct", "f_e_pct",
                                                                  "f_b_pct", "f_s_pct", "f_a_pct"};

struct RankedSource {
    std::size_t rank = 0; // 1-based
    std::string domain;
    double score = 0.0;
    /// rank / n within each signal, best first: higher f_r and f_e, lower
    /// f_p and f_b, lower raw bot and ads scores (missing counts as 0).
    /// Ties share the smallest rank.
    std::array<double, 6> percentiles{};
};

using RankingResult = std::vector<RankedSource>;

/// Sorted by descending R, ties by ascending domain.
RankingResult rank_all(std::span<const SignalVector> vectors, const RankingConfig& cfg = {});
RankingResult rank_all(const SignalTable& table, const RankingConfig& cfg = {});

/// Domains in ranking order.
std::vector<std::string> ranked_domains(const RankingResult& ranking);

void write_ranking_csv(const RankingResult& ranking, const std::string& path);
RankingResult read_ranking_csv(const std::string& path);

} // namespace newsrank
