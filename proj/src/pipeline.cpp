#include "newsrank/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "newsrank/adsmeter.hpp"
#include "newsrank/bias.hpp"
#include "newsrank/botscore.hpp"
#include "newsrank/citegraph.hpp"
#include "newsrank/error.hpp"
#include "newsrank/evalkit.hpp"
#include "newsrank/io.hpp"
#include "newsrank/ranker.hpp"
#include "newsrank/signals.hpp"
#include "newsrank/synthgen.hpp"

namespace newsrank {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::pair<Stage, std::string_view>> kStageNames = {
    {Stage::Ingest, "ingest"}, {Stage::Graph, "graph"},     {Stage::Bias, "bias"},
    {Stage::Bots, "bots"},     {Stage::Ads, "ads"},         {Stage::Signals, "signals"},
    {Stage::Rank, "rank"},     {Stage::Eval, "eval"},       {Stage::Synth, "synth"},
    {Stage::All, "all"},
};

void write_json(const json& value, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << value.dump(2) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

json report_json(const LoadReport& r) {
    json diagnostics = json::array();
    for (std::size_t i = 0; i < r.diagnostics.size() && i < 50; ++i) diagnostics.push_back(r.diagnostics[i]);
    return {{"records", r.records}, {"skipped", r.skipped}, {"dropped", r.dropped}, {"diagnostics", diagnostics}};
}

DomainCanonicalizer make_canonicalizer(const PipelineConfig& c) {
    auto psl = c.public_suffix_file.empty()
                   ? PublicSuffixList::builtin()
                   : std::make_shared<const PublicSuffixList>(PublicSuffixList::from_file(c.public_suffix_file));
    return DomainCanonicalizer(std::move(psl), c.keep_subdomains);
}

std::set<std::string, std::less<>> tracked_domains(const std::vector<SourceRecord>& sources) {
    std::set<std::string, std::less<>> out;
    for (const auto& s : sources) out.insert(s.domain);
    return out;
}

std::map<std::string, std::vector<ArticleRecord>> by_domain(std::vector<ArticleRecord> articles) {
    std::map<std::string, std::vector<ArticleRecord>> out;
    for (auto& a : articles) {
        auto domain = a.source_domain;
        out[domain].push_back(std::move(a));
    }
    return out;
}

} // namespace

Stage parse_stage(std::string_view text) {
    for (const auto& [stage, name] : kStageNames) {
        if (text == name) return stage;
    }
    throw ConfigError("unknown stage '" + std::string(text) +
                      "' (ingest|graph|bias|bots|ads|signals|rank|eval|synth|all)");
}

std::string_view to_string(Stage stage) {
    for (const auto& [s, name] : kStageNames) {
        if (s == stage) return name;
    }
    return "all";
}

Pipeline::Pipeline(PipelineConfig config, Logger log)
    : config_(std::move(config)), log_(std::move(log)), canon_(make_canonicalizer(config_)) {
    if (!config_.synth_enabled) return;
    // A synthetic run reads every unset input from the generated corpus.
    auto fill = [&](std::string& slot, std::string_view file) {
        if (slot.empty()) slot = path("synth", file);
    };
    fill(config_.input.articles, "articles.jsonl");
    fill(config_.input.sources, "sources.csv");
    fill(config_.input.entities, "entities.tsv");
    fill(config_.input.tweets, "tweets.jsonl");
    fill(config_.input.profiles, "profiles.jsonl");
    fill(config_.input.bot_labels, "bot_labels.csv");
    fill(config_.input.pages, "pages.jsonl");
    fill(config_.input.popularity, "popularity.csv");
    fill(config_.input.bias_labels, "bias_labels.csv");
    config_.experts.emplace_back("planted", path("synth", "expert_planted.csv"));
}

std::string Pipeline::path(std::string_view stage, std::string_view file) const {
    return (fs::path(config_.output_dir) / stage / file).string();
}

bool Pipeline::bias_enabled() const { return !config_.input.entities.empty(); }

bool Pipeline::bots_enabled() const {
    return !config_.input.tweets.empty() && !config_.input.profiles.empty() &&
           (!config_.input.bot_labels.empty() || !config_.input.bot_model.empty());
}

bool Pipeline::ads_enabled() const { return !config_.input.pages.empty(); }

void Pipeline::log(const std::string& message) const {
    if (log_) log_(message);
}

void Pipeline::require(std::string_view stage, std::string_view file) const {
    const auto p = path(stage, file);
    if (!fs::exists(p)) {
        throw DependencyError(std::string(stage), "missing " + p + "; run the '" + std::string(stage) +
                                                      "' stage first (newsrank " + std::string(stage) + ")");
    }
}

void Pipeline::run(Stage stage) {
    timings_.clear();
    if (stage == Stage::All) {
        if (config_.synth_enabled) run_stage(Stage::Synth);
        run_stage(Stage::Ingest);
        run_stage(Stage::Graph);
        if (bias_enabled()) run_stage(Stage::Bias);
        if (bots_enabled()) run_stage(Stage::Bots);
        if (ads_enabled()) run_stage(Stage::Ads);
        run_stage(Stage::Signals);
        run_stage(Stage::Rank);
        run_stage(Stage::Eval);
    } else {
        run_stage(stage);
    }
    write_manifest();
}

void Pipeline::run_stage(Stage stage) {
    const auto start = std::chrono::steady_clock::now();
    const std::string name(to_string(stage));
    std::error_code ec;
    fs::create_directories(fs::path(config_.output_dir) / name, ec);
    if (ec) throw IoError("cannot create '" + (fs::path(config_.output_dir) / name).string() + "': " + ec.message());
    log("[" + name + "] start");
    switch (stage) {
    case Stage::Ingest: ingest(); break;
    case Stage::Graph: graph(); break;
    case Stage::Bias: bias(); break;
    case Stage::Bots: bots(); break;
    case Stage::Ads: ads(); break;
    case Stage::Signals: signals(); break;
    case Stage::Rank: rank(); break;
    case Stage::Eval: eval(); break;
    case Stage::Synth: synth(); break;
    case Stage::All: throw ConfigError("stage 'all' cannot nest");
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    timings_.emplace_back(name, seconds);
    log("[" + name + "] done in " + std::to_string(seconds) + " s");
}

// ---------------------------------------------------------------------------

void Pipeline::synth() {
    if (!config_.synth_enabled) log("[synth] synth.enabled is false; generating anyway");
    const auto corpus = generate(config_.synth);
    write_corpus(corpus, (fs::path(config_.output_dir) / "synth").string());
    log("[synth] " + std::to_string(corpus.sources.size()) + " sources, " + std::to_string(corpus.articles.size()) +
        " articles, " + std::to_string(corpus.tweets.size()) + " tweets");
}

void Pipeline::ingest() {
    if (config_.input.articles.empty()) throw ConfigError("input.articles: required by the ingest stage");
    if (config_.synth_enabled && !fs::exists(config_.input.articles)) require("synth", "articles.jsonl");

    std::vector<SourceRecord> sources;
    LoadReport source_report;
    if (!config_.input.sources.empty()) sources = load_sources(config_.input.sources, &source_report, canon_);

    LoadReport article_report;
    auto articles = load_articles(config_.input.articles, &article_report, canon_);
    if (sources.empty()) {
        std::set<std::string> seen;
        for (const auto& a : articles) {
            if (seen.insert(a.source_domain).second) sources.push_back(SourceRecord{a.source_domain});
        }
        std::sort(sources.begin(), sources.end(), [](const auto& a, const auto& b) { return a.domain < b.domain; });
    } else {
        const auto tracked = tracked_domains(sources);
        const auto before = articles.size();
        std::erase_if(articles, [&](const ArticleRecord& a) { return !tracked.contains(a.source_domain); });
        article_report.dropped += before - articles.size();
        article_report.records -= before - articles.size();
    }

    EntityCounter entities;
    JsonLineWriter out(path("ingest", "articles.jsonl"));
    for (const auto& a : articles) {
        entities.add(a);
        out.write(to_json(a));
    }
    out.close();

    CsvWriter src(path("ingest", "sources.csv"), {"domain", "country", "language", "topic", "is_political"});
    for (const auto& s : sources) {
        src.cell(s.domain).cell(s.country).cell(s.language).cell(to_string(s.topic)).cell(s.is_political ? 1 : 0);
        src.end_row();
    }
    src.close();

    const auto counts = entities.counts();
    CsvWriter ent(path("ingest", "entities.csv"), {"domain", "unique_entities"});
    for (const auto& s : sources) {
        auto it = counts.find(s.domain);
        ent.cell(s.domain).cell(static_cast<std::uint64_t>(it == counts.end() ? 0 : it->second));
        ent.end_row();
    }
    ent.close();

    write_json({{"articles", report_json(article_report)}, {"sources", report_json(source_report)},
                {"tracked_sources", sources.size()}},
               path("ingest", "report.json"));
    log("[ingest] " + std::to_string(articles.size()) + " articles, " + std::to_string(article_report.skipped) +
        " skipped, " + std::to_string(sources.size()) + " sources");
}

void Pipeline::graph() {
    require("ingest", "articles.jsonl");
    require("ingest", "sources.csv");
    const auto sources = load_sources(path("ingest", "sources.csv"));
    const auto tracked = tracked_domains(sources);
    const std::set<std::string, std::less<>> filter = config_.tracked_only ? tracked : decltype(tracked){};

    GraphBuilder citations(config_.link_scope, canon_, filter);
    const LinkScope other_scope =
        config_.link_scope == LinkScope::ArticleCitations ? LinkScope::AllPageLinks : LinkScope::ArticleCitations;
    GraphBuilder comparison(other_scope, canon_, filter);
    CorpusActivity activity;
    ArticleReader reader(path("ingest", "articles.jsonl"), canon_);
    while (auto a = reader.next()) {
        citations.add(*a);
        comparison.add(*a);
        activity.add(*a);
    }

    PageRankOptions options;
    options.damping = config_.damping;
    options.tol = config_.tol;
    options.max_iter = config_.max_iter;

    auto g = citations.take();
    g.nodes.insert(tracked.begin(), tracked.end());
    const auto scores = page_rank(g, options);
    write_edges_csv(g, path("graph", "edges.csv"));
    write_scores_csv(scores, path("graph", "scores.csv"));
    const auto tiers = tier_stats(g, activity, order_by_score(scores.raw), config_.tier_boundaries);
    write_tier_stats_csv(tiers, path("graph", "tiers.csv"));

    auto g2 = comparison.take();
    g2.nodes.insert(tracked.begin(), tracked.end());
    const auto other_scores = page_rank(g2, options);
    write_scores_csv(other_scores, path("graph", std::string(to_string(other_scope)) + "_scores.csv"));

    // Rank agreement between the two link scopes.
    std::vector<double> a, b;
    for (const auto& [domain, v] : scores.raw) {
        a.push_back(v);
        b.push_back(other_scores.raw.at(domain));
    }
    json scope_corr = nullptr;
    if (a.size() >= 3) {
        if (auto s = spearman(a, b)) scope_corr = s->rho;
    }
    write_json({{"link_scope", to_string(config_.link_scope)},
                {"nodes", g.nodes.size()},
                {"edges", g.edges.size()},
                {"self_citations", g.self_citations()},
                {"external_citations", g.external_citations()},
                {"skipped_urls", g.skipped_urls},
                {"untracked_urls", g.untracked_urls},
                {"iterations", scores.iterations},
                {"converged", scores.converged},
                {"scope_spearman", scope_corr},
                {"warnings", tiers.warnings}},
               path("graph", "summary.json"));
    if (!scores.converged) log("[graph] warning: PageRank did not converge");
    log("[graph] " + std::to_string(g.nodes.size()) + " nodes, " + std::to_string(g.edges.size()) + " edges");
}

void Pipeline::bias() {
    if (!bias_enabled()) throw ConfigError("input.entities: required by the bias stage");
    require("ingest", "articles.jsonl");
    require("ingest", "sources.csv");
    const auto dict = load_entity_parties(config_.input.entities);
    const auto sources = load_sources(path("ingest", "sources.csv"));
    const auto grouped = by_domain(load_articles(path("ingest", "articles.jsonl"), nullptr, canon_));

    std::map<AggregationMethod, std::vector<BiasResult>> results;
    const std::vector<AggregationMethod> methods = {AggregationMethod::ArticleVote,
                                                    AggregationMethod::ArticleDistribution,
                                                    AggregationMethod::SentenceDistribution};
    for (auto method : methods) {
        for (const auto& s : sources) {
            auto it = grouped.find(s.domain);
            if (it == grouped.end()) continue;
            results[method].push_back(score_source_bias(s.domain, it->second, dict, method, config_.bias_theta));
        }
    }
    const auto& chosen = results[config_.bias_method];
    write_bias_parties_csv(chosen, path("bias", "parties.csv"));
    write_bias_sources_csv(chosen, path("bias", "sources.csv"));

    if (!config_.input.bias_labels.empty()) {
        const auto labels = load_bias_labels(config_.input.bias_labels, nullptr, canon_);
        CsvWriter out(path("bias", "accuracy.csv"), {"method", "accuracy", "evaluated", "correct"});
        for (auto method : methods) {
            std::map<std::string, Lean> predicted;
            for (const auto& r : results[method]) predicted[r.domain] = r.lean.lean;
            try {
                const auto acc = bias_accuracy(predicted, labels);
                out.cell(to_string(method)).cell(acc.accuracy);
                out.cell(static_cast<std::uint64_t>(acc.evaluated)).cell(static_cast<std::uint64_t>(acc.correct));
                out.end_row();
            } catch (const ConfigError& e) {
                log(std::string("[bias] accuracy skipped: ") + e.what());
            }
        }
        out.close();
    }
    log("[bias] " + std::to_string(chosen.size()) + " sources scored with " +
        std::string(to_string(config_.bias_method)));
}

void Pipeline::bots() {
    if (!bots_enabled()) throw ConfigError("input.tweets, input.profiles and input.bot_labels: required by the bots stage");
    require("ingest", "sources.csv");
    const auto profiles = load_profiles(config_.input.profiles);
    const Eigen::MatrixXd features = feature_matrix(profiles);

    BotModel model;
    json metrics;
    if (!config_.input.bot_model.empty()) {
        model = BotModel::load(config_.input.bot_model);
        metrics["source"] = "pretrained";
    } else {
        const auto labels = load_bot_labels(config_.input.bot_labels);
        std::vector<Eigen::Index> rows;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            if (labels.count(profiles[i].user_id)) rows.push_back(static_cast<Eigen::Index>(i));
        }
        Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), kBotFeatureCount);
        Eigen::VectorXi y(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            x.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
            y[static_cast<Eigen::Index>(i)] = labels.at(profiles[static_cast<std::size_t>(rows[i])].user_id) == BotLabel::Bot;
        }
        TrainConfig tc;
        tc.max_epochs = config_.bot_max_epochs;
        tc.seed = config_.seed;
        const auto tuned = train_with_tuning(x, y, config_.ridge_grid, tc);
        model = tuned.model;
        metrics = {{"source", "trained"},
                   {"labeled_users", rows.size()},
                   {"ridge", tuned.ridge},
                   {"epochs", tuned.training.epochs},
                   {"converged", tuned.training.converged},
                   {"test_precision", tuned.test.precision},
                   {"test_recall", tuned.test.recall},
                   {"test_f1", tuned.test.f1},
                   {"test_accuracy", tuned.test.accuracy}};
    }
    model.save(path("bots", "model.txt"));

    std::map<std::string, double> user_scores;
    CsvWriter users(path("bots", "users.csv"), {"user_id", "bot_score"});
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        const auto& id = profiles[static_cast<std::size_t>(i)].user_id;
        const double s = score_user(model, features.row(i).transpose());
        user_scores[id] = s;
        users.cell(id).cell(s);
        users.end_row();
    }
    users.close();

    const auto tracked = tracked_domains(load_sources(path("ingest", "sources.csv")));
    LoadReport tweet_report;
    const auto tweets = load_tweets(config_.input.tweets, &tweet_report, canon_, tracked);
    const auto scores = source_bot_scores(tweets, user_scores);
    write_source_bots_csv(scores, path("bots", "sources.csv"));
    metrics["tweets"] = report_json(tweet_report);
    write_json(metrics, path("bots", "metrics.json"));
    log("[bots] " + std::to_string(user_scores.size()) + " users scored, " + std::to_string(scores.size()) +
        " sources");
}

void Pipeline::ads() {
    if (!ads_enabled()) throw ConfigError("input.pages: required by the ads stage");
    AdsAccumulator acc;
    std::size_t skipped = 0;
    for (const auto& page : load_ad_pages(config_.input.pages)) {
        std::string domain;
        try {
            domain = canon_.canonical(page.domain.empty() ? page.url : page.domain);
        } catch (const ParseError&) {
            ++skipped;
            continue;
        }
        acc.add({page.url, domain, count_ad_iframes(page.html, config_.ad_patterns)});
    }
    const auto scores = acc.scores();
    write_ads_csv(scores, path("ads", "sources.csv"));
    log("[ads] " + std::to_string(scores.size()) + " sources, " + std::to_string(skipped) + " pages skipped");
}

void Pipeline::signals() {
    require("graph", "scores.csv");
    require("ingest", "entities.csv");
    require("ingest", "sources.csv");
    if (bias_enabled()) require("bias", "sources.csv");
    if (bots_enabled()) require("bots", "sources.csv");
    if (ads_enabled()) require("ads", "sources.csv");

    SignalInputs in;
    const auto reputation = read_scores_csv(path("graph", "scores.csv"));
    in.reputation_raw = reputation.raw;
    in.reputation = reputation.normalized;

    {
        std::ifstream f(path("ingest", "entities.csv"));
        std::string line;
        std::getline(f, line);
        while (std::getline(f, line)) {
            auto cells = split_csv(line);
            if (cells.size() != 2) throw ParseError("malformed entities row: " + line);
            in.entities[cells[0]] = static_cast<std::uint64_t>(parse_int(cells[1]));
        }
    }
    for (const auto& s : load_sources(path("ingest", "sources.csv"))) {
        if (!s.is_political) in.non_political.insert(s.domain);
    }
    if (!config_.input.popularity.empty()) {
        const auto feed = load_popularity(config_.input.popularity, nullptr, canon_);
        std::optional<Timestamp> end;
        for (const auto& [_, entries] : feed) {
            if (!entries.empty() && (!end || entries.back().date > *end)) end = entries.back().date;
        }
        for (const auto& [domain, entries] : feed) {
            if (auto p = popularity(entries, config_.popularity_window_days, end)) in.popularity[domain] = *p;
        }
    }
    if (bias_enabled()) {
        for (const auto& [domain, row] : read_bias_sources_csv(path("bias", "sources.csv"))) {
            if (row.gap) in.bias_gap[domain] = *row.gap;
        }
    }
    if (bots_enabled()) {
        for (const auto& [domain, s] : read_source_bots_csv(path("bots", "sources.csv"))) {
            if (s.tweet_count >= config_.bot_min_tweets) in.bot_scores[domain] = s.score;
        }
    }
    if (ads_enabled()) {
        for (const auto& [domain, s] : read_ads_csv(path("ads", "sources.csv"))) {
            if (s.pages_scanned >= config_.ads_min_pages) in.ads_scores[domain] = s.mean_ads_per_page;
        }
    }

    const auto result = assemble(in, {config_.percentile, config_.min_population});
    snapshot_signals(result.table, path("signals", "snapshot.jsonl"));
    write_signals_csv(result.table, path("signals", "signals.csv"));
    write_lines(result.residue, path("signals", "residue.txt"));
    write_lines(result.warnings, path("signals", "warnings.txt"));
    for (const auto& w : result.warnings) log("[signals] warning: " + w);
    log("[signals] " + std::to_string(result.table.size()) + " sources, " + std::to_string(result.residue.size()) +
        " residue");
}

void Pipeline::rank() {
    require("signals", "snapshot.jsonl");
    const auto table = read_signal_snapshot(path("signals", "snapshot.jsonl"));
    const auto ranking = rank_all(table, config_.ranking);
    write_ranking_csv(ranking, path("rank", "ranking.csv"));
    log("[rank] " + std::to_string(ranking.size()) + " sources ranked");
}

void Pipeline::eval() {
    require("rank", "ranking.csv");
    const auto ranking = ranked_domains(read_ranking_csv(path("rank", "ranking.csv")));

    std::vector<ComparisonReport> reports;
    for (const auto& [name, file] : config_.experts) {
        const auto expert = load_expert_ranking(file, name, nullptr, canon_);
        reports.push_back(compare_external(ranking, expert));
    }
    write_comparison_csv(reports, path("eval", "comparison.csv"));

    const auto sample = stratified_sample(ranking, config_.eval_boundaries, config_.eval_per_tier, config_.seed);
    CsvWriter out(path("eval", "sample.csv"), {"band", "domain"});
    for (std::size_t b = 0; b < sample.bands.size(); ++b) {
        for (const auto& d : sample.bands[b]) {
            out.cell(static_cast<std::uint64_t>(b + 1)).cell(d);
            out.end_row();
        }
    }
    out.close();

    json summary = {{"sources", ranking.size()}, {"sampled", sample.all().size()}, {"sample_warnings", sample.warnings}};
    json experts = json::array();
    std::size_t positive = 0, correlated = 0;
    for (const auto& r : reports) {
        experts.push_back({{"name", r.name},
                           {"common", r.common},
                           {"total", r.total},
                           {"corr", r.rho ? json(*r.rho) : json(nullptr)},
                           {"p_value", r.p_value ? json(*r.p_value) : json(nullptr)},
                           {"quality", r.quality}});
        if (r.rho) {
            ++correlated;
            if (*r.rho > 0.0) ++positive;
        }
    }
    summary["experts"] = experts;
    summary["positive_correlations"] = positive;
    summary["defined_correlations"] = correlated;
    if (fs::exists(path("bias", "accuracy.csv"))) {
        std::ifstream f(path("bias", "accuracy.csv"));
        std::string line;
        std::getline(f, line);
        json acc = json::object();
        while (std::getline(f, line)) {
            auto cells = split_csv(line);
            if (cells.size() >= 2) acc[cells[0]] = parse_double(cells[1]);
        }
        summary["bias_accuracy"] = acc;
    }
    write_json(summary, path("eval", "summary.json"));
    for (const auto& r : reports) {
        log("[eval] " + r.name + ": T_n/N = " + std::to_string(r.common) + "/" + std::to_string(r.total) +
            (r.rho ? ", rho = " + std::to_string(*r.rho) : std::string(", rho undefined")) +
            ", quality = " + std::to_string(r.quality));
    }
}

// ---------------------------------------------------------------------------

void Pipeline::write_manifest() const {
    const fs::path root(config_.output_dir);
    json inputs = json::object();
    const std::vector<std::pair<std::string, std::string>> paths = {
        {"input.articles", config_.input.articles},     {"input.sources", config_.input.sources},
        {"input.entities", config_.input.entities},     {"input.tweets", config_.input.tweets},
        {"input.profiles", config_.input.profiles},     {"input.bot_labels", config_.input.bot_labels},
        {"input.bot_model", config_.input.bot_model},   {"input.pages", config_.input.pages},
        {"input.popularity", config_.input.popularity}, {"input.bias_labels", config_.input.bias_labels},
    };
    for (const auto& [key, p] : paths) {
        if (!p.empty() && fs::exists(p)) inputs[key] = file_digest(p);
    }
    for (const auto& [name, p] : config_.experts) {
        if (fs::exists(p)) inputs["expert." + name] = file_digest(p);
    }

    std::map<std::string, std::string> outputs;
    if (fs::exists(root)) {
        for (const auto& entry : fs::recursive_directory_iterator(root)) {
            if (!entry.is_regular_file()) continue;
            const auto rel = fs::relative(entry.path(), root).generic_string();
            if (rel == "manifest.json" || rel == "timings.json") continue;
            outputs[rel] = file_digest(entry.path().string());
        }
    }
    json stages = json::array();
    for (const auto& [name, _] : timings_) stages.push_back(name);
    write_json({{"config_hash", config_.hash()},
                {"seed", config_.seed},
                {"stages", stages},
                {"inputs", inputs},
                {"outputs", outputs}},
               (root / "manifest.json").string());

    json timings = json::object();
    for (const auto& [name, seconds] : timings_) timings[name] = seconds;
    write_json(timings, (root / "timings.json").string());
}

} // namespace newsrank
