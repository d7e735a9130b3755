#include "newsrank/botscore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {

const std::array<std::string_view, kBotFeatureCount> kBotFeatureNames = {
    "followers",   "followees", "ratio",     "log_max_count", "ratio_x_log",      "verified",          "favourites",
    "listed",      "description_length",     "geo_enabled",   "has_location",     "has_time_zone",     "default_profile",
    "default_profile_image"};

BotFeatureVector extract_features(const UserProfile& p) {
    const double followers = static_cast<double>(p.follower_count);
    const double followees = static_cast<double>(p.followee_count);
    const double ratio = followees / std::max(followers, 1.0);
    const double log_max = std::log(std::max({followers, followees, 1.0}));
    BotFeatureVector f;
    f << followers, followees, ratio, log_max, ratio * log_max, p.verified ? 1.0 : 0.0,
        static_cast<double>(p.favourites_count), static_cast<double>(p.listed_count),
        static_cast<double>(p.description_length), p.geo_enabled ? 1.0 : 0.0, p.has_location ? 1.0 : 0.0,
        p.has_time_zone ? 1.0 : 0.0, p.default_profile ? 1.0 : 0.0, p.default_profile_image ? 1.0 : 0.0;
    return f;
}

Eigen::MatrixXd feature_matrix(std::span<const UserProfile> profiles) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(profiles.size()), kBotFeatureCount);
    for (std::size_t i = 0; i < profiles.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = extract_features(profiles[i]).transpose();
    return x;
}

// ---------------------------------------------------------------------------

BotModel::BotModel()
    : mean_(Eigen::VectorXd::Zero(kBotFeatureCount)),
      stddev_(Eigen::VectorXd::Ones(kBotFeatureCount)),
      coef_(Eigen::VectorXd::Zero(kBotFeatureCount)) {}

BotModel::BotModel(Eigen::VectorXd mean, Eigen::VectorXd stddev, Eigen::VectorXd coef, double intercept)
    : mean_(std::move(mean)), stddev_(std::move(stddev)), coef_(std::move(coef)), intercept_(intercept) {
    if (mean_.size() != kBotFeatureCount || stddev_.size() != kBotFeatureCount || coef_.size() != kBotFeatureCount) {
        throw ConfigError("bot model needs " + std::to_string(kBotFeatureCount) + " parameters per vector");
    }
    if ((stddev_.array() <= 0.0).any()) throw ConfigError("bot model standard deviations must be positive");
}

double BotModel::logit(const BotFeatureVector& features) const {
    const Eigen::VectorXd z = (features - mean_).cwiseQuotient(stddev_);
    return coef_.dot(z) + intercept_;
}

double BotModel::score(const BotFeatureVector& features) const {
    const double t = logit(features);
    // Branches keep exp() from overflowing.
    return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

namespace {

void write_vector(std::ostream& out, std::string_view name, const Eigen::VectorXd& v) {
    out << name;
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << format_double(v[i]);
    out << '\n';
}

Eigen::VectorXd read_vector(std::istream& in, std::string_view name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("bot model truncated before '" + std::string(name) + "'");
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key != name) throw ParseError("bot model expected '" + std::string(name) + "', got '" + key + "'");
    std::vector<double> values;
    std::string token;
    while (fields >> token) values.push_back(parse_double(token));
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

} // namespace

void BotModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "kind logistic\n";
    write_vector(out, "mean", mean_);
    write_vector(out, "stddev", stddev_);
    write_vector(out, "coef", coef_);
    out << "intercept " << format_double(intercept_) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

BotModel BotModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    std::getline(in, line);
    if (line != "kind logistic") throw ParseError("unsupported bot model kind in '" + path + "'");
    auto mean = read_vector(in, "mean");
    auto stddev = read_vector(in, "stddev");
    auto coef = read_vector(in, "coef");
    auto intercept = read_vector(in, "intercept");
    if (intercept.size() != 1) throw ParseError("bot model intercept must be one value");
    return BotModel(std::move(mean), std::move(stddev), std::move(coef), intercept[0]);
}

// ---------------------------------------------------------------------------

namespace {

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

struct Objective {
    const Eigen::MatrixXd& z; // standardized features
    const Eigen::VectorXd& y; // 0/1
    double ridge;

    /// Mean log loss plus ridge penalty on the coefficients (not the intercept).
    double value(const Eigen::VectorXd& w, double b) const {
        const Eigen::VectorXd t = (z * w).array() + b;
        double loss = 0.0;
        for (Eigen::Index i = 0; i < t.size(); ++i) loss += softplus(t[i]) - y[i] * t[i];
        return loss / static_cast<double>(t.size()) + 0.5 * ridge * w.squaredNorm();
    }

    void gradient(const Eigen::VectorXd& w, double b, Eigen::VectorXd& gw, double& gb) const {
        const Eigen::VectorXd t = (z * w).array() + b;
        const Eigen::VectorXd p = t.unaryExpr([](double v) { return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v)); });
        const Eigen::VectorXd r = (p - y) / static_cast<double>(t.size());
        gw = z.transpose() * r + ridge * w;
        gb = r.sum();
    }
};

} // namespace

BotModel train(const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot, const TrainConfig& config,
               TrainingReport* report) {
    if (features.rows() == 0) throw ConfigError("cannot train a bot model on no samples");
    if (features.cols() != kBotFeatureCount) throw ConfigError("bot features must have 14 columns");
    if (features.rows() != is_bot.size()) throw ConfigError("feature and label counts differ");
    if (config.ridge < 0.0) throw ConfigError("ridge must be non-negative");

    std::vector<Eigen::Index> bots, humans;
    for (Eigen::Index i = 0; i < is_bot.size(); ++i) (is_bot[i] ? bots : humans).push_back(i);
    if (bots.empty() || humans.empty()) throw ConfigError("bot model training needs both bot and human samples");

    std::vector<Eigen::Index> rows;
    if (config.balance && bots.size() != humans.size()) {
        std::mt19937_64 rng(config.seed);
        auto& major = bots.size() > humans.size() ? bots : humans;
        const auto& minor = bots.size() > humans.size() ? humans : bots;
        std::shuffle(major.begin(), major.end(), rng);
        major.resize(minor.size());
        std::sort(major.begin(), major.end());
    }
    rows.insert(rows.end(), bots.begin(), bots.end());
    rows.insert(rows.end(), humans.begin(), humans.end());
    std::sort(rows.begin(), rows.end());

    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd x(n, kBotFeatureCount);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x.row(i) = features.row(rows[static_cast<std::size_t>(i)]);
        y[i] = is_bot[rows[static_cast<std::size_t>(i)]] ? 1.0 : 0.0;
    }

    const Eigen::VectorXd mean = x.colwise().mean().transpose();
    Eigen::VectorXd stddev = ((x.rowwise() - mean.transpose()).array().square().colwise().sum() / static_cast<double>(n))
                                 .sqrt()
                                 .transpose();
    for (Eigen::Index j = 0; j < stddev.size(); ++j) {
        if (!(stddev[j] > 1e-12)) stddev[j] = 1.0;
    }
    const Eigen::MatrixXd z = (x.rowwise() - mean.transpose()).array().rowwise() / stddev.transpose().array();

    Objective objective{z, y, config.ridge};
    Eigen::VectorXd w = Eigen::VectorXd::Zero(kBotFeatureCount);
    double b = 0.0;
    double loss = objective.value(w, b);
    double step = 1.0;
    TrainingReport local;
    local.bots = bots.size();
    local.humans = humans.size();

    Eigen::VectorXd gw;
    double gb = 0.0;
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        objective.gradient(w, b, gw, gb);
        const double g2 = gw.squaredNorm() + gb * gb;
        if (g2 == 0.0) {
            local.converged = true;
            break;
        }
        // Armijo backtracking: accept only steps that decrease the objective.
        step = std::min(step * 2.0, 1e3);
        double next_loss = loss;
        Eigen::VectorXd w_next;
        double b_next = b;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            w_next = w - step * gw;
            b_next = b - step * gb;
            next_loss = objective.value(w_next, b_next);
            if (next_loss <= loss - 1e-4 * step * g2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        ++local.epochs;
        if (!accepted) {
            local.loss_history.push_back(loss);
            local.converged = true;
            break;
        }
        const double change = loss - next_loss;
        w = std::move(w_next);
        b = b_next;
        loss = next_loss;
        local.loss_history.push_back(loss);
        if (change < config.loss_tol) {
            local.converged = true;
            break;
        }
    }
    if (report) *report = std::move(local);
    return BotModel(mean, stddev, w, b);
}

DataSplit split_dataset(std::size_t n, std::uint64_t seed, double train_fraction, double tune_fraction) {
    if (train_fraction < 0.0 || tune_fraction < 0.0 || train_fraction + tune_fraction > 1.0) {
        throw ConfigError("split fractions must be non-negative and sum to at most 1");
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    const auto n_tune = std::min(n - n_train, static_cast<std::size_t>(std::llround(tune_fraction * static_cast<double>(n))));
    DataSplit split;
    split.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.tune.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                      idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_tune));
    split.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_tune), idx.end());
    for (auto* part : {&split.train, &split.tune, &split.test}) std::sort(part->begin(), part->end());
    return split;
}

ClassifierMetrics evaluate(const BotClassifier& model, const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot,
                           double threshold) {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        const bool predicted = model.score(features.row(i).transpose()) >= threshold;
        const bool actual = is_bot[i] != 0;
        if (predicted && actual) ++tp;
        else if (predicted) ++fp;
        else if (actual) ++fn;
        else ++tn;
    }
    ClassifierMetrics m;
    const auto d = [](std::size_t v) { return static_cast<double>(v); };
    m.precision = tp + fp ? d(tp) / d(tp + fp) : 0.0;
    m.recall = tp + fn ? d(tp) / d(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    const auto total = tp + fp + fn + tn;
    m.accuracy = total ? d(tp + tn) / d(total) : 0.0;
    return m;
}

namespace {

std::pair<Eigen::MatrixXd, Eigen::VectorXi> take_rows(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                                                      const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(rows.size()), x.cols());
    Eigen::VectorXi ys(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
        ys[static_cast<Eigen::Index>(i)] = y[static_cast<Eigen::Index>(rows[i])];
    }
    return {std::move(xs), std::move(ys)};
}

double mean_log_loss(const BotClassifier& model, const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
    if (x.rows() == 0) return 0.0;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double p = std::clamp(model.score(x.row(i).transpose()), 1e-15, 1.0 - 1e-15);
        loss -= y[i] ? std::log(p) : std::log1p(-p);
    }
    return loss / static_cast<double>(x.rows());
}

} // namespace

TunedModel train_with_tuning(const Eigen::MatrixXd& features, const Eigen::VectorXi& is_bot,
                             const std::vector<double>& ridge_grid, const TrainConfig& config) {
    if (ridge_grid.empty()) throw ConfigError("ridge grid must not be empty");
    const auto split = split_dataset(static_cast<std::size_t>(features.rows()), config.seed);
    const auto [x_train, y_train] = take_rows(features, is_bot, split.train);
    const auto [x_tune, y_tune] = take_rows(features, is_bot, split.tune);
    const auto [x_test, y_test] = take_rows(features, is_bot, split.test);

    std::optional<TunedModel> best;
    double best_loss = 0.0;
    for (double ridge : ridge_grid) {
        TrainConfig c = config;
        c.ridge = ridge;
        TrainingReport report;
        auto model = train(x_train, y_train, c, &report);
        const double loss = mean_log_loss(model, x_tune, y_tune);
        if (!best || loss < best_loss) {
            best_loss = loss;
            best = TunedModel{std::move(model), ridge, {}, std::move(report)};
        }
    }
    best->test = evaluate(best->model, x_test, y_test);
    return std::move(*best);
}

double score_user(const BotClassifier& model, const BotFeatureVector& features) { return model.score(features); }

// ---------------------------------------------------------------------------

std::optional<SourceBotScore> source_bot_score(std::string domain, std::span<const TweetRecord> tweets,
                                               const std::map<std::string, double>& user_scores) {
    if (tweets.empty()) return std::nullopt;
    SourceBotScore out;
    out.domain = std::move(domain);
    std::set<std::string_view> users;
    double sum = 0.0;
    for (const auto& t : tweets) {
        auto it = user_scores.find(t.user_id);
        if (it == user_scores.end()) throw ConfigError("tweet '" + t.tweet_id + "' has an unscored author");
        sum += it->second;
        users.insert(t.user_id);
    }
    out.tweet_count = tweets.size();
    out.distinct_user_count = users.size();
    out.score = std::clamp(sum / static_cast<double>(tweets.size()), 0.0, 1.0);
    return out;
}

std::map<std::string, SourceBotScore> source_bot_scores(std::span<const TweetRecord> tweets,
                                                        const std::map<std::string, double>& user_scores) {
    struct Acc {
        double sum = 0.0;
        std::size_t tweets = 0;
        std::set<std::string_view> users;
    };
    std::map<std::string, Acc> acc;
    for (const auto& t : tweets) {
        auto it = user_scores.find(t.user_id);
        if (it == user_scores.end()) continue;
        const std::set<std::string_view> targets(t.target_domains.begin(), t.target_domains.end());
        for (const auto domain : targets) {
            auto& a = acc[std::string(domain)];
            a.sum += it->second;
            ++a.tweets;
            a.users.insert(t.user_id);
        }
    }
    std::map<std::string, SourceBotScore> out;
    for (auto& [domain, a] : acc) {
        out.emplace(domain, SourceBotScore{domain, std::clamp(a.sum / static_cast<double>(a.tweets), 0.0, 1.0),
                                           a.tweets, a.users.size()});
    }
    return out;
}

void write_source_bots_csv(const std::map<std::string, SourceBotScore>& scores, const std::string& path) {
    CsvWriter out(path, {"domain", "bot_score", "tweets", "users"});
    for (const auto& [domain, s] : scores) {
        out.cell(domain).cell(s.score).cell(static_cast<std::uint64_t>(s.tweet_count)).cell(static_cast<std::uint64_t>(s.distinct_user_count));
        out.end_row();
    }
    out.close();
}

std::map<std::string, SourceBotScore> read_source_bots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::map<std::string, SourceBotScore> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 4) throw ParseError("malformed bot row in '" + path + "': " + line);
        out[cells[0]] = SourceBotScore{cells[0], parse_double(cells[1]), static_cast<std::size_t>(parse_int(cells[2])),
                                       static_cast<std::size_t>(parse_int(cells[3]))};
    }
    return out;
}

} // namespace newsrank
