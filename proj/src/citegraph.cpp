#include "newsrank/citegraph.hpp"

#include <algorithm>
#include <cmath>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {

LinkScope parse_link_scope(std::string_view text) {
    if (text == "article_citations") return LinkScope::ArticleCitations;
    if (text == "all_page_links") return LinkScope::AllPageLinks;
    throw ConfigError("unknown link scope '" + std::string(text) + "' (article_citations|all_page_links)");
}

std::string_view to_string(LinkScope scope) {
    return scope == LinkScope::ArticleCitations ? "article_citations" : "all_page_links";
}

std::uint64_t CitationGraph::self_citations() const {
    std::uint64_t total = 0;
    for (const auto& [domain, count] : self_citation_counts) total += count;
    return total;
}

std::uint64_t CitationGraph::external_citations() const {
    std::uint64_t total = 0;
    for (const auto& [edge, weight] : edges) total += weight;
    return total;
}

void CitationGraph::merge(const CitationGraph& other) {
    if (other.link_scope != link_scope) throw ConfigError("cannot merge graphs built with different link scopes");
    nodes.insert(other.nodes.begin(), other.nodes.end());
    for (const auto& [edge, weight] : other.edges) edges[edge] += weight;
    for (const auto& [domain, count] : other.self_citation_counts) self_citation_counts[domain] += count;
    skipped_urls += other.skipped_urls;
    untracked_urls += other.untracked_urls;
}

void CorpusActivity::add(const ArticleRecord& article) {
    ++articles[article.source_domain];
    if (!first || article.published_at < *first) first = article.published_at;
    if (!last || article.published_at > *last) last = article.published_at;
}

void CorpusActivity::merge(const CorpusActivity& other) {
    for (const auto& [domain, count] : other.articles) articles[domain] += count;
    if (other.first && (!first || *other.first < *first)) first = other.first;
    if (other.last && (!last || *other.last > *last)) last = other.last;
}

std::int64_t CorpusActivity::span_days() const {
    if (!first || !last) return 0;
    auto day = [](Timestamp t) {
        auto s = t.time_since_epoch().count();
        return s >= 0 ? s / 86400 : (s - 86399) / 86400;
    };
    return day(*last) - day(*first) + 1;
}

GraphBuilder::GraphBuilder(LinkScope scope, DomainCanonicalizer canon, std::set<std::string, std::less<>> tracked)
    : canon_(std::move(canon)), tracked_(std::move(tracked)) {
    graph_.link_scope = scope;
}

void GraphBuilder::add(const ArticleRecord& article) {
    const auto& src = article.source_domain;
    graph_.nodes.insert(src);
    const auto& urls = graph_.link_scope == LinkScope::ArticleCitations ? article.citation_urls : article.all_link_urls;
    for (const auto& url : urls) {
        std::string dst;
        try {
            dst = canon_.canonical(url);
        } catch (const ParseError&) {
            ++graph_.skipped_urls;
            continue;
        }
        if (dst == src) {
            ++graph_.self_citation_counts[src];
            continue;
        }
        if (!tracked_.empty() && !tracked_.contains(dst)) {
            ++graph_.untracked_urls;
            continue;
        }
        graph_.nodes.insert(dst);
        ++graph_.edges[{src, std::move(dst)}];
    }
}

CitationGraph build_graph(std::span<const ArticleRecord> articles, LinkScope scope, const DomainCanonicalizer& canon,
                          const std::set<std::string, std::less<>>& tracked) {
    GraphBuilder builder(scope, canon, tracked);
    for (const auto& a : articles) builder.add(a);
    return builder.take();
}

Eigen::SparseMatrix<double> weight_matrix(const CitationGraph& graph) {
    std::map<std::string_view, int> index;
    int next = 0;
    for (const auto& node : graph.nodes) index.emplace(node, next++);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(graph.edges.size());
    for (const auto& [edge, weight] : graph.edges) {
        triplets.emplace_back(index.at(edge.first), index.at(edge.second), static_cast<double>(weight));
    }
    Eigen::SparseMatrix<double> w(next, next);
    w.setFromTriplets(triplets.begin(), triplets.end());
    return w;
}

std::map<std::string, double> normalize_min_max(const std::map<std::string, double>& raw) {
    std::map<std::string, double> out;
    if (raw.empty()) return out;
    auto [lo, hi] = std::minmax_element(raw.begin(), raw.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    const double min = lo->second;
    const double range = hi->second - min;
    for (const auto& [domain, value] : raw) {
        out.emplace(domain, range > 0.0 ? std::clamp((value - min) / range, 0.0, 1.0) : 1.0);
    }
    return out;
}

std::vector<std::string> order_by_score(const std::map<std::string, double>& scores) {
    std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    std::vector<std::string> out;
    out.reserve(items.size());
    for (auto& [domain, score] : items) out.push_back(std::move(domain));
    return out;
}

ReputationScores page_rank(const CitationGraph& graph, const PageRankOptions& options) {
    if (!(options.damping > 0.0 && options.damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");
    if (!(options.tol > 0.0)) throw ConfigError("tolerance must be positive");
    if (options.max_iter < 1) throw ConfigError("max_iter must be positive");

    ReputationScores scores;
    if (graph.nodes.empty()) {
        scores.converged = true;
        return scores;
    }
    const auto weights = weight_matrix(graph);
    auto observer = [&](int iter, const Eigen::VectorXd& v) {
        if (options.observer) options.observer(iter, v);
    };
    const Eigen::VectorXd rank = weighted_page_rank<double>(weights, options.damping, options.tol, options.max_iter,
                                                            observer, &scores.iterations, &scores.converged);
    Eigen::Index i = 0;
    for (const auto& node : graph.nodes) scores.raw.emplace(node, rank[i++]);
    scores.normalized = normalize_min_max(scores.raw);
    return scores;
}

TierTable tier_stats(const CitationGraph& graph, const CorpusActivity& activity, const std::vector<std::string>& ranking,
                     const std::vector<std::size_t>& boundaries) {
    if (boundaries.empty()) throw ConfigError("tier boundaries must not be empty");
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i] < 2 || (i > 0 && boundaries[i] <= boundaries[i - 1])) {
            throw ConfigError("tier boundaries must be strictly increasing and greater than 1");
        }
    }

    std::map<std::string_view, std::uint64_t> out_external;
    std::map<std::string_view, std::uint64_t> in_external;
    for (const auto& [edge, weight] : graph.edges) {
        out_external[edge.first] += weight;
        in_external[edge.second] += weight;
    }
    auto lookup = [](const auto& m, std::string_view key) -> std::uint64_t {
        auto it = m.find(key);
        return it == m.end() ? 0 : it->second;
    };
    auto self_count = [&](const std::string& domain) -> std::uint64_t {
        auto it = graph.self_citation_counts.find(domain);
        return it == graph.self_citation_counts.end() ? 0 : it->second;
    };

    TierTable table;
    if (ranking.size() + 1 < boundaries.back()) {
        table.warnings.push_back("ranking holds " + std::to_string(ranking.size()) + " sources but tiers extend to rank " +
                                 std::to_string(boundaries.back() - 1) + "; tiers truncated");
    }
    const double span = static_cast<double>(activity.span_days());

    std::size_t lo = 1;
    for (std::size_t hi : boundaries) {
        TierStats tier;
        tier.first_rank = lo;
        tier.end_rank = hi;
        std::size_t with_docs = 0;
        for (std::size_t rank = lo; rank < hi && rank <= ranking.size(); ++rank) {
            const auto& domain = ranking[rank - 1];
            ++tier.sources;
            const auto found = activity.articles.find(domain);
            const std::uint64_t docs = found == activity.articles.end() ? 0 : found->second;
            if (span > 0.0) tier.docs_per_day += static_cast<double>(docs) / span;
            if (docs == 0) continue;
            ++with_docs;
            const double d = static_cast<double>(docs);
            tier.self_citations_per_doc += static_cast<double>(self_count(domain)) / d;
            tier.external_out_per_doc += static_cast<double>(lookup(out_external, domain)) / d;
            tier.in_citations_per_doc += static_cast<double>(lookup(in_external, domain)) / d;
        }
        lo = hi;
        if (tier.sources == 0) continue;
        tier.docs_per_day /= static_cast<double>(tier.sources);
        if (with_docs > 0) {
            tier.self_citations_per_doc /= static_cast<double>(with_docs);
            tier.external_out_per_doc /= static_cast<double>(with_docs);
            tier.in_citations_per_doc /= static_cast<double>(with_docs);
        }
        table.tiers.push_back(tier);
    }
    return table;
}

TierTable tier_stats(const CitationGraph& graph, std::span<const ArticleRecord> articles,
                     const std::vector<std::string>& ranking, const std::vector<std::size_t>& boundaries) {
    CorpusActivity activity;
    for (const auto& a : articles) activity.add(a);
    return tier_stats(graph, activity, ranking, boundaries);
}

void write_edges_csv(const CitationGraph& graph, const std::string& path) {
    CsvWriter out(path, {"src", "dst", "weight"});
    for (const auto& [edge, weight] : graph.edges) {
        out.cell(edge.first).cell(edge.second).cell(static_cast<std::uint64_t>(weight));
        out.end_row();
    }
    out.close();
}

void write_scores_csv(const ReputationScores& scores, const std::string& path) {
    CsvWriter out(path, {"domain", "raw", "normalized"});
    for (const auto& [domain, raw] : scores.raw) {
        out.cell(domain).cell(raw).cell(scores.normalized.at(domain));
        out.end_row();
    }
    out.close();
}

ReputationScores read_scores_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    ReputationScores scores;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 3) throw ParseError("malformed reputation row in '" + path + "': " + line);
        scores.raw[cells[0]] = parse_double(cells[1]);
        scores.normalized[cells[0]] = parse_double(cells[2]);
    }
    scores.converged = true;
    return scores;
}

void write_tier_stats_csv(const TierTable& table, const std::string& path) {
    CsvWriter out(path, {"first_rank", "end_rank", "sources", "docs_per_day", "self_out_per_doc", "other_out_per_doc",
                         "other_in_per_doc"});
    for (const auto& t : table.tiers) {
        out.cell(static_cast<std::uint64_t>(t.first_rank))
            .cell(static_cast<std::uint64_t>(t.end_rank))
            .cell(static_cast<std::uint64_t>(t.sources))
            .cell(t.docs_per_day)
            .cell(t.self_citations_per_doc)
            .cell(t.external_out_per_doc)
            .cell(t.in_citations_per_doc);
        out.end_row();
    }
    out.close();
}

} // namespace newsrank
