#include "newsrank/signals.hpp"

#include <algorithm>
#include <cmath>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {

std::uint64_t unique_entities(std::span<const ArticleRecord> articles) {
    std::set<std::string> seen;
    for (const auto& a : articles) {
        for (const auto& s : a.sentences) {
            for (const auto& e : s.entity_mentions) {
                auto name = EntityPartyDictionary::normalize(e);
                if (!name.empty()) seen.insert(std::move(name));
            }
        }
    }
    return seen.size();
}

void EntityCounter::add(const ArticleRecord& article) {
    auto& seen = entities_[article.source_domain];
    for (const auto& s : article.sentences) {
        for (const auto& e : s.entity_mentions) {
            auto name = EntityPartyDictionary::normalize(e);
            if (!name.empty()) seen.insert(std::move(name));
        }
    }
}

void EntityCounter::merge(const EntityCounter& other) {
    for (const auto& [domain, names] : other.entities_) entities_[domain].insert(names.begin(), names.end());
}

std::map<std::string, std::uint64_t> EntityCounter::counts() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [domain, names] : entities_) out.emplace(domain, names.size());
    return out;
}

std::map<std::string, double> normalize_breadth(const std::map<std::string, std::uint64_t>& counts) {
    std::map<std::string, double> out;
    if (counts.empty()) return out;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [_, c] : counts) {
        const double v = std::log1p(static_cast<double>(c));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& [domain, c] : counts) {
        if (hi > lo) out.emplace(domain, std::clamp((std::log1p(static_cast<double>(c)) - lo) / (hi - lo), 0.0, 1.0));
        else out.emplace(domain, c > 0 ? 1.0 : 0.0);
    }
    return out;
}

// ---------------------------------------------------------------------------

int popularity_tier(double mean_rank) {
    const auto tier = static_cast<int>(std::ceil(mean_rank / kPopularityTierWidth));
    return std::clamp(tier, 1, static_cast<int>(kMaxPopularityRank / kPopularityTierWidth));
}

std::optional<PopularityScore> popularity(std::span<const PopularityEntry> entries, int window_days,
                                          std::optional<Timestamp> window_end) {
    if (window_days < 1) throw ConfigError("popularity window must be at least one day");
    if (entries.empty()) return std::nullopt;
    Timestamp end = window_end.value_or(
        std::max_element(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.date < b.date; })
            ->date);
    const Timestamp start = end - std::chrono::days(window_days);

    double sum = 0.0;
    std::size_t days = 0;
    for (const auto& e : entries) {
        if (e.date <= start || e.date > end) continue;
        if (e.rank < 1.0 || e.rank > kMaxPopularityRank) throw ConfigError("popularity rank out of range");
        sum += e.rank;
        ++days;
    }
    if (days == 0) return std::nullopt;
    PopularityScore out;
    out.mean_rank = sum / static_cast<double>(days);
    out.tier = popularity_tier(out.mean_rank);
    out.f_p = std::clamp(out.mean_rank / kMaxPopularityRank, 0.0, 1.0);
    out.days = days;
    return out;
}

// ---------------------------------------------------------------------------

double nearest_rank_percentile(std::vector<double> values, double p) {
    if (values.empty()) throw ConfigError("percentile of an empty population");
    if (!(p > 0.0 && p <= 100.0)) throw ConfigError("percentile must lie in (0, 100]");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    // Guard the product against rounding just above an integer.
    auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0 - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

FlagResult threshold_flags(const std::map<std::string, double>& scores, double percentile,
                           std::size_t min_population) {
    FlagResult out;
    for (const auto& [domain, _] : scores) out.flags.emplace(domain, false);
    if (scores.size() < min_population) {
        if (!scores.empty()) {
            out.warnings.push_back("only " + std::to_string(scores.size()) + " scored domains (minimum " +
                                   std::to_string(min_population) + "); no flags set");
        }
        return out;
    }
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& [_, v] : scores) values.push_back(v);
    const double threshold = nearest_rank_percentile(std::move(values), percentile);
    out.threshold = threshold;
    for (const auto& [domain, v] : scores) out.flags[domain] = v > threshold;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Map>
void collect_residue(const Map& table, const std::map<std::string, double>& population, std::set<std::string>& out) {
    for (const auto& [domain, _] : table) {
        if (!population.count(domain)) out.insert(domain);
    }
}

std::map<std::string, bool> flags_over(const std::map<std::string, double>& scores,
                                       const std::map<std::string, double>& population, const FlagOptions& options,
                                       std::string_view label, std::vector<std::string>& warnings) {
    std::map<std::string, double> eligible;
    for (const auto& [domain, v] : scores) {
        if (population.count(domain)) eligible.emplace(domain, v);
    }
    auto result = threshold_flags(eligible, options.percentile, options.min_population);
    for (auto& w : result.warnings) warnings.push_back(std::string(label) + ": " + w);
    return result.flags;
}

} // namespace

AssembleResult assemble(const SignalInputs& in, const FlagOptions& options) {
    AssembleResult out;

    std::set<std::string> residue;
    collect_residue(in.reputation_raw, in.reputation, residue);
    collect_residue(in.entities, in.reputation, residue);
    collect_residue(in.popularity, in.reputation, residue);
    collect_residue(in.bias_gap, in.reputation, residue);
    collect_residue(in.bot_scores, in.reputation, residue);
    collect_residue(in.ads_scores, in.reputation, residue);
    out.residue.assign(residue.begin(), residue.end());

    std::map<std::string, std::uint64_t> entity_counts;
    for (const auto& [domain, _] : in.reputation) {
        auto it = in.entities.find(domain);
        entity_counts.emplace(domain, it == in.entities.end() ? 0 : it->second);
    }
    const auto breadth = normalize_breadth(entity_counts);
    const auto bot_flags = flags_over(in.bot_scores, in.reputation, options, "bots", out.warnings);
    const auto ads_flags = flags_over(in.ads_scores, in.reputation, options, "ads", out.warnings);

    for (const auto& [domain, f_r] : in.reputation) {
        SignalVector v;
        v.domain = domain;
        v.f_r = std::clamp(f_r, 0.0, 1.0);
        if (auto it = in.reputation_raw.find(domain); it != in.reputation_raw.end()) v.raw.pagerank = it->second;

        v.raw.entities = entity_counts.at(domain);
        v.f_e = breadth.at(domain);

        if (auto it = in.popularity.find(domain); it != in.popularity.end()) {
            v.f_p = std::clamp(it->second.f_p, 0.0, 1.0);
            v.raw.alexa_mean = it->second.mean_rank;
        }

        if (auto it = in.bias_gap.find(domain); it != in.bias_gap.end()) {
            v.raw.gap = it->second;
            if (!in.non_political.count(domain)) v.f_b = std::clamp(std::abs(it->second) / 2.0, 0.0, 1.0);
        }

        if (auto it = in.bot_scores.find(domain); it != in.bot_scores.end()) {
            v.raw.bot = it->second;
            v.f_s = bot_flags.at(domain);
        }
        if (auto it = in.ads_scores.find(domain); it != in.ads_scores.end()) {
            v.raw.ads = it->second;
            v.f_a = ads_flags.at(domain);
        }
        out.table.emplace(domain, std::move(v));
    }
    return out;
}

void write_signals_csv(const SignalTable& table, const std::string& path) {
    CsvWriter out(path, {"domain", "f_r", "f_p", "f_e", "f_b", "f_s", "f_a", "raw_pagerank", "raw_alexa",
                         "raw_entities", "raw_gap", "raw_bot", "raw_ads"});
    auto optional_cell = [&](const std::optional<double>& v) {
        if (v) out.cell(*v);
        else out.empty_cell();
    };
    for (const auto& [domain, v] : table) {
        out.cell(domain).cell(v.f_r).cell(v.f_p).cell(v.f_e).cell(v.f_b);
        out.cell(v.f_s ? 1 : 0).cell(v.f_a ? 1 : 0).cell(v.raw.pagerank);
        optional_cell(v.raw.alexa_mean);
        out.cell(v.raw.entities);
        optional_cell(v.raw.gap);
        optional_cell(v.raw.bot);
        optional_cell(v.raw.ads);
        out.end_row();
    }
    out.close();
}

} // namespace newsrank
