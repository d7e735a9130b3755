#include "newsrank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {

void RankingConfig::validate() const {
    if (!(penalty > 0.0 && penalty <= 1.0)) throw ConfigError("rank.penalty must lie in (0, 1]");
    if (!weights.allFinite()) throw ConfigError("ranking weights must be finite");
}

double consensus_score(const SignalVector& v, const RankingConfig& cfg) {
    const int flags = static_cast<int>(v.f_s) + static_cast<int>(v.f_a);
    double factor = 1.0;
    for (int i = 0; i < flags; ++i) factor *= cfg.penalty;
    return cfg.weights.dot(continuous_signals(v)) * factor;
}

namespace {

/// Competition ranks ("1224") of `keys` with smaller keys ranked first.
std::vector<std::size_t> min_ranks(const std::vector<double>& keys) {
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<std::size_t> ranks(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const bool tied = i > 0 && keys[order[i]] == keys[order[i - 1]];
        ranks[order[i]] = tied ? ranks[order[i - 1]] : i + 1;
    }
    return ranks;
}

} // namespace

RankingResult rank_all(std::span<const SignalVector> vectors, const RankingConfig& cfg) {
    cfg.validate();
    const std::size_t n = vectors.size();
    RankingResult out(n);
    if (n == 0) return out;

    // Keys are arranged so that smaller is better.
    const std::array<std::function<double(const SignalVector&)>, 6> keys = {
        [](const SignalVector& v) { return -v.f_r; },
        [](const SignalVector& v) { return v.f_p; },
        [](const SignalVector& v) { return -v.f_e; },
        [](const SignalVector& v) { return v.f_b; },
        [](const SignalVector& v) { return v.raw.bot.value_or(0.0); },
        [](const SignalVector& v) { return v.raw.ads.value_or(0.0); },
    };
    std::array<std::vector<std::size_t>, 6> signal_ranks;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = keys[k](vectors[i]);
        signal_ranks[k] = min_ranks(values);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) scores[i] = consensus_score(vectors[i], cfg);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return vectors[a].domain < vectors[b].domain;
    });

    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        auto& r = out[pos];
        r.rank = pos + 1;
        r.domain = vectors[i].domain;
        r.score = scores[i];
        for (std::size_t k = 0; k < 6; ++k) {
            r.percentiles[k] = static_cast<double>(signal_ranks[k][i]) / static_cast<double>(n);
        }
    }
    return out;
}

RankingResult rank_all(const SignalTable& table, const RankingConfig& cfg) {
    std::vector<SignalVector> vectors;
    vectors.reserve(table.size());
    for (const auto& [_, v] : table) vectors.push_back(v);
    return rank_all(std::span<const SignalVector>(vectors), cfg);
}

std::vector<std::string> ranked_domains(const RankingResult& ranking) {
    std::vector<std::string> out;
    out.reserve(ranking.size());
    for (const auto& r : ranking) out.push_back(r.domain);
    return out;
}

void write_ranking_csv(const RankingResult& ranking, const std::string& path) {
    std::vector<std::string> header = {"rank", "domain", "score"};
    header.insert(header.end(), kPercentileColumns.begin(), kPercentileColumns.end());
    CsvWriter out(path, header);
    for (const auto& r : ranking) {
        out.cell(static_cast<std::uint64_t>(r.rank)).cell(r.domain).cell(r.score);
        for (double p : r.percentiles) out.cell(p);
        out.end_row();
    }
    out.close();
}

RankingResult read_ranking_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    RankingResult out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 9) throw ParseError("malformed ranking row in '" + path + "': " + line);
        RankedSource r;
        r.rank = static_cast<std::size_t>(parse_int(cells[0]));
        r.domain = cells[1];
        r.score = parse_double(cells[2]);
        for (std::size_t k = 0; k < 6; ++k) r.percentiles[k] = parse_double(cells[3 + k]);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace newsrank
