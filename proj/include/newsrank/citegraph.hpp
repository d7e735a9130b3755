#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "newsrank/domain.hpp"
#include "newsrank/types.hpp"

namespace newsrank {

/// Which links of an article count as citations: in-body citations
/// (the citation graph) or every link on the page (the URL graph).
enum class LinkScope { ArticleCitations, AllPageLinks };

LinkScope parse_link_scope(std::string_view text);
std::string_view to_string(LinkScope scope);

/// Directed weighted graph of inter-source citations. Self-citations are
/// never edges; they are tallied per source in `self_citation_counts`.
struct CitationGraph {
    LinkScope link_scope = LinkScope::ArticleCitations;
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
    std::map<std::string, std::uint64_t> self_citation_counts;
    std::uint64_t skipped_urls = 0;   // not canonicalizable
    std::uint64_t untracked_urls = 0; // resolved outside the tracked source set

    std::uint64_t self_citations() const;
    std::uint64_t external_citations() const;

    /// Associative, commutative union of two shard graphs.
    void merge(const CitationGraph& other);

    friend bool operator==(const CitationGraph&, const CitationGraph&) = default;
};

/// Per-source publishing activity needed for tier statistics.
struct CorpusActivity {
    std::map<std::string, std::uint64_t> articles;
    std::optional<Timestamp> first;
    std::optional<Timestamp> last;

    void add(const ArticleRecord& article);
    void merge(const CorpusActivity& other);
    /// Calendar days (UTC) from the first to the last article, inclusive.
    std::int64_t span_days() const;
};

/// Incremental graph construction over an article stream.
class GraphBuilder {
public:
    explicit GraphBuilder(LinkScope scope, DomainCanonicalizer canon = {},
                          std::set<std::string, std::less<>> tracked = {});

    void add(const ArticleRecord& article);
    const CitationGraph& graph() const { return graph_; }
    CitationGraph take() { return std::move(graph_); }

private:
    DomainCanonicalizer canon_;
    std::set<std::string, std::less<>> tracked_;
    CitationGraph graph_;
};

/// Edge (a, b) carries the number of citation URLs in a's articles that
/// resolve to b != a. When `tracked` is non-empty, links to sources
/// outside it are ignored (counted in `untracked_urls`).
CitationGraph build_graph(std::span<const ArticleRecord> articles, LinkScope scope,
                          const DomainCanonicalizer& canon = {},
                          const std::set<std::string, std::less<>>& tracked = {});

// ---------------------------------------------------------------------------
// Weighted PageRank
// ---------------------------------------------------------------------------

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
    /// Called after every iteration with the current probability vector.
    std::function<void(int, const Eigen::VectorXd&)> observer;
};

struct ReputationScores {
    std::map<std::string, double> raw;
    std::map<std::string, double> normalized;
    int iterations = 0;
    bool converged = false;
};

/// Weighted PageRank by power iteration. Row i of `weights` holds the
/// out-edge weights of node i; the step from i to j has probability
/// w_ij / sum_k w_ik, and dangling nodes spread their mass uniformly.
/// Iterates until the L-infinity change drops below `tol`.
template <typename Scalar, typename Observer>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weighted_page_rank(const Eigen::SparseMatrix<Scalar>& weights, Scalar damping,
                                                            Scalar tol, int max_iter, Observer&& observer,
                                                            int* iterations = nullptr, bool* converged = nullptr) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index n = weights.rows();
    if (iterations) *iterations = 0;
    if (converged) *converged = true;
    if (n == 0) return Vector();

    const Vector out_weight = weights * Vector::Ones(n);
    const Eigen::Array<bool, Eigen::Dynamic, 1> dangling = out_weight.array() <= Scalar(0);
    const Vector inv_out = dangling.select(Scalar(0), out_weight.array().inverse()).matrix();
    const Eigen::SparseMatrix<Scalar> transposed = weights.transpose();

    Vector rank = Vector::Constant(n, Scalar(1) / Scalar(n));
    Vector next(n);
    bool done = false;
    int iter = 0;
    while (iter < max_iter && !done) {
        const Scalar dangling_mass = dangling.select(rank.array(), Scalar(0)).sum();
        next = damping * (transposed * rank.cwiseProduct(inv_out));
        next.array() += (damping * dangling_mass + (Scalar(1) - damping)) / Scalar(n);
        done = (next - rank).template lpNorm<Eigen::Infinity>() < tol;
        rank.swap(next);
        ++iter;
        observer(iter, rank);
    }
    if (iterations) *iterations = iter;
    if (converged) *converged = done;
    return rank;
}

/// Sparse weight matrix of `graph` over its nodes in sorted order.
Eigen::SparseMatrix<double> weight_matrix(const CitationGraph& graph);

/// Raw PageRank over the graph plus its min-max normalization onto
/// [0, 1]. When all raw scores are equal every source normalizes to 1.
ReputationScores page_rank(const CitationGraph& graph, const PageRankOptions& options = {});

/// Min-max normalization with the all-equal case mapped to 1.
std::map<std::string, double> normalize_min_max(const std::map<std::string, double>& raw);

/// Domains ordered by descending score, ties by ascending domain.
std::vector<std::string> order_by_score(const std::map<std::string, double>& scores);

// ---------------------------------------------------------------------------
// Tier statistics
// ---------------------------------------------------------------------------

inline const std::vector<std::size_t> kDefaultTierBoundaries = {500, 2000, 5000, 10000, 20000, 50000};

struct TierStats {
    std::size_t first_rank = 0; // inclusive
    std::size_t end_rank = 0;   // exclusive
    std::size_t sources = 0;
    double docs_per_day = 0.0;
    double self_citations_per_doc = 0.0;
    double external_out_per_doc = 0.0;
    double in_citations_per_doc = 0.0;
};

struct TierTable {
    std::vector<TierStats> tiers;
    std::vector<std::string> warnings;
};

/// Per-tier means over the sources ranked in [1, b1), [b1, b2), ...
/// Per-document columns divide by the source's own article count (for
/// in-citations, the cited source's count) and skip sources without
/// articles. Empty tiers are omitted.
TierTable tier_stats(const CitationGraph& graph, const CorpusActivity& activity,
                     const std::vector<std::string>& ranking,
                     const std::vector<std::size_t>& boundaries = kDefaultTierBoundaries);

TierTable tier_stats(const CitationGraph& graph, std::span<const ArticleRecord> articles,
                     const std::vector<std::string>& ranking,
                     const std::vector<std::size_t>& boundaries = kDefaultTierBoundaries);

// ---------------------------------------------------------------------------

void write_edges_csv(const CitationGraph& graph, const std::string& path);
void write_scores_csv(const ReputationScores& scores, const std::string& path);
ReputationScores read_scores_csv(const std::string& path);
void write_tier_stats_csv(const TierTable& table, const std::string& path);

} // namespace newsrank
