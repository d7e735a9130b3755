#include "newsrank/bias.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {
namespace {

constexpr double kVoteEpsilon = 1e-9;

/// Party mention counts of one sentence.
std::map<std::string, std::uint64_t> sentence_parties(const SentenceAnnotation& sentence,
                                                      const EntityPartyDictionary& dict) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& entity : sentence.entity_mentions) {
        if (const auto* party = dict.party_of(entity)) ++counts[*party];
    }
    return counts;
}

std::map<std::string, PartyAccumulator> article_accumulators(const ArticleRecord& article,
                                                             const EntityPartyDictionary& dict) {
    std::map<std::string, PartyAccumulator> parties;
    for (const auto& sentence : article.sentences) {
        for (const auto& [party, count] : sentence_parties(sentence, dict)) {
            auto& acc = parties[party];
            acc.add(sentence.sentiment.vector(), static_cast<double>(count));
            acc.mentions += count;
        }
    }
    return parties;
}

} // namespace

AggregationMethod parse_aggregation_method(std::string_view text) {
    if (text == "AV" || text == "av") return AggregationMethod::ArticleVote;
    if (text == "AD" || text == "ad") return AggregationMethod::ArticleDistribution;
    if (text == "SD" || text == "sd") return AggregationMethod::SentenceDistribution;
    throw ConfigError("unknown aggregation method '" + std::string(text) + "' (AV|AD|SD)");
}

std::string_view to_string(AggregationMethod method) {
    switch (method) {
    case AggregationMethod::ArticleVote: return "AV";
    case AggregationMethod::ArticleDistribution: return "AD";
    case AggregationMethod::SentenceDistribution: break;
    }
    return "SD";
}

std::optional<SentimentDistribution> PartyAccumulator::distribution() const {
    if (!(weight > 0.0)) return std::nullopt;
    return SentimentDistribution(Eigen::Vector3d(sum / weight));
}

PartyDistributions article_party_distribution(const ArticleRecord& article, const EntityPartyDictionary& dict) {
    PartyDistributions out;
    for (const auto& [party, acc] : article_accumulators(article, dict)) {
        if (auto d = acc.distribution()) out.emplace(party, *d);
    }
    return out;
}

SentimentDistribution article_vote(const SentimentDistribution& dist) {
    if (dist.pos() > dist.neg() + kVoteEpsilon) return {1.0, 0.0, 0.0};
    if (dist.neg() > dist.pos() + kVoteEpsilon) return {0.0, 0.0, 1.0};
    return {0.0, 1.0, 0.0};
}

void SourceAggregator::add(const ArticleRecord& article, const EntityPartyDictionary& dict) {
    if (method_ == AggregationMethod::SentenceDistribution) {
        for (const auto& sentence : article.sentences) {
            for (const auto& [party, count] : sentence_parties(sentence, dict)) {
                auto& acc = parties_[party];
                acc.add(sentence.sentiment.vector(), static_cast<double>(count));
                acc.mentions += count;
            }
        }
        return;
    }
    for (const auto& [party, article_acc] : article_accumulators(article, dict)) {
        auto dist = article_acc.distribution();
        if (!dist) continue;
        auto& acc = parties_[party];
        const auto& contribution = method_ == AggregationMethod::ArticleVote ? article_vote(*dist) : *dist;
        acc.add(contribution.vector(), 1.0);
        acc.mentions += article_acc.mentions;
    }
}

void SourceAggregator::merge(const SourceAggregator& other) {
    if (other.method_ != method_) throw ConfigError("cannot merge aggregators of different methods");
    for (const auto& [party, acc] : other.parties_) parties_[party].merge(acc);
}

PartyDistributions SourceAggregator::distributions() const {
    PartyDistributions out;
    for (const auto& [party, acc] : parties_) {
        if (auto d = acc.distribution()) out.emplace(party, *d);
    }
    return out;
}

std::map<std::string, std::uint64_t> SourceAggregator::mentions() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [party, acc] : parties_) out.emplace(party, acc.mentions);
    return out;
}

PartyDistributions aggregate(std::span<const ArticleRecord> articles, const EntityPartyDictionary& dict,
                             AggregationMethod method) {
    SourceAggregator agg(method);
    for (const auto& a : articles) agg.add(a, dict);
    return agg.distributions();
}

std::optional<double> bias_score(const SentimentDistribution& dist) {
    const double denom = dist.pos() + dist.neg();
    if (!(denom > 0.0)) return std::nullopt;
    return std::clamp((dist.pos() - dist.neg()) / denom, -1.0, 1.0);
}

std::map<std::string, PartyBias> party_biases(const PartyDistributions& dists,
                                              const std::map<std::string, std::uint64_t>& mentions) {
    std::map<std::string, PartyBias> out;
    for (const auto& [party, dist] : dists) {
        auto score = bias_score(dist);
        if (!score) continue;
        auto it = mentions.find(party);
        out.emplace(party, PartyBias{*score, it == mentions.end() ? 0 : it->second});
    }
    return out;
}

LeanGap lean_and_gap(const std::map<std::string, PartyBias>& parties, const EntityPartyDictionary& dict, double theta) {
    double left_sum = 0.0, left_weight = 0.0, right_sum = 0.0, right_weight = 0.0;
    for (const auto& [party, bias] : parties) {
        const double w = static_cast<double>(bias.mentions);
        switch (dict.wing_of(party)) {
        case Wing::Left:
            left_sum += w * bias.score;
            left_weight += w;
            break;
        case Wing::Right:
            right_sum += w * bias.score;
            right_weight += w;
            break;
        case Wing::Other: break;
        }
    }
    LeanGap out;
    if (left_weight > 0.0) out.left_score = left_sum / left_weight;
    if (right_weight > 0.0) out.right_score = right_sum / right_weight;
    if (!out.left_score || !out.right_score) return out;

    out.gap = *out.left_score - *out.right_score;
    out.f_b = std::abs(out.gap) / 2.0;
    if (out.gap > theta) out.lean = Lean::Left;
    else if (out.gap < -theta) out.lean = Lean::Right;
    return out;
}

BiasResult score_source_bias(std::string domain, std::span<const ArticleRecord> articles,
                             const EntityPartyDictionary& dict, AggregationMethod method, double theta) {
    SourceAggregator agg(method);
    for (const auto& a : articles) agg.add(a, dict);
    BiasResult result;
    result.domain = std::move(domain);
    result.parties = party_biases(agg.distributions(), agg.mentions());
    result.lean = lean_and_gap(result.parties, dict, theta);
    return result;
}

// ---------------------------------------------------------------------------

void SentimentLexicon::add(std::string_view token, Polarity polarity) {
    std::string key(token);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    tokens_[std::move(key)] = polarity;
}

const SentimentLexicon::Polarity* SentimentLexicon::find(std::string_view token) const {
    auto it = tokens_.find(token);
    return it == tokens_.end() ? nullptr : &it->second;
}

SentimentLexicon SentimentLexicon::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon '" + path + "'");
    SentimentLexicon lexicon;
    std::string line;
    while (std::getline(in, line)) {
        auto cells = split_csv(line, '\t');
        if (cells.size() < 2 || cells[0].empty() || cells[0][0] == '#') continue;
        if (cells[1] == "positive") lexicon.add(cells[0], Polarity::Positive);
        else if (cells[1] == "negative") lexicon.add(cells[0], Polarity::Negative);
    }
    return lexicon;
}

SentimentDistribution naive_sentence_sentiment(std::string_view text, const SentimentLexicon& lexicon) {
    std::uint64_t positive = 0, negative = 0;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (const auto* p = lexicon.find(token)) (*p == SentimentLexicon::Polarity::Positive ? positive : negative)++;
        token.clear();
    };
    for (unsigned char c : text) {
        if (std::isspace(c)) flush();
        else if (!std::ispunct(c)) token += static_cast<char>(std::tolower(c));
    }
    flush();
    const double denom = static_cast<double>(positive + negative + 1);
    const double pos = static_cast<double>(positive) / denom;
    const double neg = static_cast<double>(negative) / denom;
    return {pos, 1.0 - pos - neg, neg};
}

// ---------------------------------------------------------------------------

void write_bias_parties_csv(const std::vector<BiasResult>& results, const std::string& path) {
    CsvWriter out(path, {"domain", "party", "bias", "mentions"});
    for (const auto& r : results) {
        for (const auto& [party, bias] : r.parties) {
            out.cell(r.domain).cell(party).cell(bias.score).cell(bias.mentions);
            out.end_row();
        }
    }
    out.close();
}

void write_bias_sources_csv(const std::vector<BiasResult>& results, const std::string& path) {
    CsvWriter out(path, {"domain", "left", "right", "gap", "lean"});
    for (const auto& r : results) {
        out.cell(r.domain);
        if (r.lean.left_score) out.cell(*r.lean.left_score);
        else out.empty_cell();
        if (r.lean.right_score) out.cell(*r.lean.right_score);
        else out.empty_cell();
        if (r.lean.left_score && r.lean.right_score) out.cell(r.lean.gap);
        else out.empty_cell();
        out.cell(to_string(r.lean.lean));
        out.end_row();
    }
    out.close();
}

std::map<std::string, SourceBiasRow> read_bias_sources_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::map<std::string, SourceBiasRow> out;
    std::string line;
    std::getline(in, line);
    auto opt = [](const std::string& cell) -> std::optional<double> {
        if (cell.empty()) return std::nullopt;
        return parse_double(cell);
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 5) throw ParseError("malformed bias row in '" + path + "': " + line);
        out[cells[0]] = SourceBiasRow{opt(cells[1]), opt(cells[2]), opt(cells[3]), parse_lean(cells[4])};
    }
    return out;
}

} // namespace newsrank
