#include "newsrank/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {

Eigen::VectorXd average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    Eigen::VectorXd ranks(static_cast<Eigen::Index>(n));
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mean = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[static_cast<Eigen::Index>(order[k])] = mean;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd dx = x.array() - x.mean();
    const Eigen::VectorXd dy = y.array() - y.mean();
    const double sxx = dx.squaredNorm();
    const double syy = dy.squaredNorm();
    if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
    return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

double t_approx_p_value(double rho, std::size_t n) {
    if (std::abs(rho) >= 1.0) return 0.0;
    const double df = static_cast<double>(n - 2);
    const double t = rho * std::sqrt(df / (1.0 - rho * rho));
    boost::math::students_t dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double permutation_p_value(const Eigen::VectorXd& rx, const Eigen::VectorXd& ry, double rho) {
    Eigen::VectorXd perm = ry;
    std::sort(perm.data(), perm.data() + perm.size());
    std::size_t extreme = 0, total = 0;
    const double target = std::abs(rho) - 1e-12;
    do {
        ++total;
        const auto r = pearson(rx, perm);
        if (r && std::abs(*r) >= target) ++extreme;
    } while (std::next_permutation(perm.data(), perm.data() + perm.size()));
    // next_permutation skips duplicate arrangements of tied ranks; each
    // distinct arrangement is equally likely, so the ratio is unchanged.
    return static_cast<double>(extreme) / static_cast<double>(total);
}

} // namespace

std::optional<SpearmanResult> spearman(std::span<const double> xs, std::span<const double> ys, PValueMethod method) {
    if (xs.size() != ys.size()) throw ConfigError("spearman inputs differ in length");
    if (xs.size() < 3) throw ConfigError("spearman needs at least 3 pairs");
    const Eigen::VectorXd rx = average_ranks(xs);
    const Eigen::VectorXd ry = average_ranks(ys);
    const auto rho = pearson(rx, ry);
    if (!rho) return std::nullopt;

    SpearmanResult out;
    out.rho = *rho;
    out.n = xs.size();
    if (method == PValueMethod::Auto) {
        method = out.n <= kExactPermutationMaxN ? PValueMethod::ExactPermutation : PValueMethod::TApprox;
    }
    if (method == PValueMethod::ExactPermutation) {
        if (out.n > 10) throw ConfigError("exact permutation p-values are limited to n <= 10");
        out.p_value = permutation_p_value(rx, ry, out.rho);
    } else {
        out.p_value = t_approx_p_value(out.rho, out.n);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> StratifiedSample::all() const {
    std::vector<std::string> out;
    for (const auto& band : bands) out.insert(out.end(), band.begin(), band.end());
    return out;
}

StratifiedSample stratified_sample(const std::vector<std::string>& ranking, const std::vector<std::size_t>& boundaries,
                                   std::size_t per_tier, std::uint64_t seed) {
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i] == 0 || (i > 0 && boundaries[i] <= boundaries[i - 1])) {
            throw ConfigError("sample boundaries must be positive and strictly increasing");
        }
    }
    StratifiedSample out;
    std::mt19937_64 rng(seed);
    std::size_t lo = 0;
    for (std::size_t k = 0; k <= boundaries.size(); ++k) {
        const std::size_t hi = k < boundaries.size() ? std::min(boundaries[k], ranking.size()) : ranking.size();
        std::vector<std::string> band;
        if (hi > lo) band.assign(ranking.begin() + static_cast<std::ptrdiff_t>(lo), ranking.begin() + static_cast<std::ptrdiff_t>(hi));
        if (band.size() < per_tier) {
            out.warnings.push_back("band " + std::to_string(k + 1) + " holds " + std::to_string(band.size()) +
                                   " sources, fewer than " + std::to_string(per_tier) + "; taking all");
        }
        std::vector<std::string> picked;
        std::sample(band.begin(), band.end(), std::back_inserter(picked), per_tier, rng);
        out.bands.push_back(std::move(picked));
        lo = std::max(lo, hi);
    }
    return out;
}

QualityResult quality_from_ranks(const std::vector<std::size_t>& ranks, std::size_t m) {
    if (ranks.empty()) throw ConfigError("quality needs a non-empty source set");
    const std::size_t k = ranks.size();
    if (k > m) throw ConfigError("quality set is larger than the ranking");
    QualityResult out;
    out.used = k;
    for (std::size_t r : ranks) {
        if (r < 1 || r > m) throw ConfigError("rank outside [1, m]");
        out.q += 1.0 / static_cast<double>(r);
    }
    double q_max = 0.0, q_min = 0.0;
    for (std::size_t i = 1; i <= k; ++i) q_max += 1.0 / static_cast<double>(i);
    for (std::size_t i = m - k + 1; i <= m; ++i) q_min += 1.0 / static_cast<double>(i);
    out.q_n = q_max > q_min ? std::clamp((out.q - q_min) / (q_max - q_min), 0.0, 1.0) : 1.0;
    return out;
}

QualityResult quality(const std::vector<std::string>& members, const std::vector<std::string>& ranking) {
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < ranking.size(); ++i) position.emplace(ranking[i], i + 1);
    std::vector<std::size_t> ranks;
    std::vector<std::string> excluded;
    std::unordered_map<std::string, bool> seen;
    for (const auto& d : members) {
        if (seen.count(d)) continue;
        seen.emplace(d, true);
        auto it = position.find(d);
        if (it == position.end()) excluded.push_back(d);
        else ranks.push_back(it->second);
    }
    if (ranks.empty()) throw ConfigError("no member of the set appears in the ranking");
    auto out = quality_from_ranks(ranks, ranking.size());
    out.excluded = std::move(excluded);
    return out;
}

AccuracyResult bias_accuracy(const std::map<std::string, Lean>& predicted, const std::map<std::string, Lean>& labels) {
    AccuracyResult out;
    for (const auto& [domain, label] : labels) {
        auto it = predicted.find(domain);
        if (it == predicted.end()) continue;
        ++out.evaluated;
        if (it->second != Lean::None && it->second == label) ++out.correct;
    }
    if (out.evaluated == 0) throw ConfigError("no labeled source has a prediction");
    out.accuracy = static_cast<double>(out.correct) / static_cast<double>(out.evaluated);
    return out;
}

ComparisonReport compare_external(const std::vector<std::string>& internal, const ExpertRanking& expert) {
    if (expert.domains.empty()) throw ConfigError("expert ranking '" + expert.name + "' is empty");
    ComparisonReport out;
    out.name = expert.name;
    out.topic = expert.topic;
    out.group = expert.group;
    out.total = expert.domains.size();

    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < internal.size(); ++i) position.emplace(internal[i], i + 1);
    std::vector<double> expert_ranks, internal_ranks;
    std::vector<std::size_t> member_ranks;
    for (std::size_t i = 0; i < expert.domains.size(); ++i) {
        auto it = position.find(expert.domains[i]);
        if (it == position.end()) continue;
        expert_ranks.push_back(static_cast<double>(i + 1));
        internal_ranks.push_back(static_cast<double>(it->second));
        member_ranks.push_back(it->second);
    }
    out.common = member_ranks.size();
    if (out.common >= 3) {
        if (auto s = spearman(expert_ranks, internal_ranks)) {
            out.rho = s->rho;
            out.p_value = s->p_value;
        }
    }
    if (!member_ranks.empty()) out.quality = quality_from_ranks(member_ranks, internal.size()).q_n;
    return out;
}

void write_comparison_csv(const std::vector<ComparisonReport>& reports, const std::string& path) {
    CsvWriter out(path, {"name", "topic", "group", "T_n", "N", "corr", "p_value", "quality"});
    for (const auto& r : reports) {
        out.cell(r.name).cell(r.topic).cell(r.group);
        out.cell(static_cast<std::uint64_t>(r.common)).cell(static_cast<std::uint64_t>(r.total));
        if (r.rho) out.cell(*r.rho);
        else out.empty_cell();
        if (r.p_value) out.cell(*r.p_value);
        else out.empty_cell();
        out.cell(r.quality);
        out.end_row();
    }
    out.close();
}

} // namespace newsrank
