#include "newsrank/config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {
namespace {

namespace fs = std::filesystem;

struct KeySpec {
    const char* key;
    const char* value;
    const char* help;
};

// Order here is the order of `config init`.
const std::vector<KeySpec> kKeys = {
    {"input.articles", "", "annotated articles, JSON lines"},
    {"input.sources", "", "source metadata CSV; defines the tracked set when given"},
    {"input.entities", "", "entity/party/wing TSV; enables the bias stage"},
    {"input.tweets", "", "tweets, JSON lines"},
    {"input.profiles", "", "user profiles, JSON lines"},
    {"input.bot_labels", "", "user_id,label CSV used to train the bot model"},
    {"input.bot_model", "", "pretrained bot model; replaces training"},
    {"input.pages", "", "stored HTML pages, JSON lines"},
    {"input.popularity", "", "domain,date,rank CSV"},
    {"input.bias_labels", "", "domain,label CSV for bias accuracy"},
    {"graph.link_scope", "article_citations", "article_citations | all_page_links"},
    {"graph.damping", "0.85", ""},
    {"graph.tol", "1e-9", "L-infinity change that stops the iteration"},
    {"graph.max_iter", "200", ""},
    {"graph.tier_boundaries", "500,2000,5000,10000,20000,50000", ""},
    {"graph.tracked_only", "true", "ignore citations to untracked domains"},
    {"domain.keep_subdomains", "", "comma list of hosts kept as separate sources"},
    {"domain.public_suffix_file", "", "full public suffix list; built-in subset otherwise"},
    {"bias.method", "SD", "AV | AD | SD"},
    {"bias.theta", "0.0", "gap beyond which a source leans"},
    {"bots.ridge_grid", "1e-4,1e-3,1e-2,1e-1", "candidates tuned on the 10% split"},
    {"bots.max_epochs", "2000", ""},
    {"bots.min_tweets", "10", "tweets needed before a source score is used"},
    {"ads.min_pages", "5", "pages needed before a source score is used"},
    {"ads.src_patterns", "googlesyndication,doubleclick,googleads", ""},
    {"ads.id_prefixes", "google_ads_iframe", ""},
    {"signals.percentile", "95", "flag threshold percentile"},
    {"signals.min_population", "20", "scored domains needed before flagging"},
    {"popularity.window_days", "30", ""},
    {"rank.w_r", "1.65", ""},
    {"rank.w_p", "-0.35", ""},
    {"rank.w_e", "0.05", ""},
    {"rank.w_b", "-0.10", ""},
    {"rank.penalty", "0.95", "per-flag multiplier in (0, 1]"},
    {"eval.boundaries", "100,400,1600,6400,25600", "stratified sampling bands"},
    {"eval.per_tier", "100", ""},
    {"seed", "42", ""},
    {"output.dir", "out", ""},
    {"synth.enabled", "false", "generate a synthetic corpus and use it as input"},
    {"synth.sources", "500", ""},
    {"synth.days", "90", ""},
    {"synth.exponent", "2", "citation preference exponent"},
    {"synth.quality_shape", "3", ""},
    {"synth.bias_skew", "0.1", ""},
    {"synth.twin_pairs", "10", ""},
    {"synth.articles_per_source", "0", "fixed article count; 0 uses quality-driven rates"},
};

const KeySpec* find_key(const std::string& key) {
    for (const auto& k : kKeys) {
        if (key == k.key) return &k;
    }
    return nullptr;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& cell : split_csv(text)) {
        auto t = trim(cell);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

/// Typed access to the value map; every failure names its key.
class Reader {
public:
    Reader(const std::map<std::string, std::string>& values, std::string base)
        : values_(values), base_(std::move(base)) {}

    const std::string& text(const std::string& key) const { return values_.at(key); }

    double real(const std::string& key) const {
        try {
            return parse_double(text(key));
        } catch (const Error&) {
            fail(key, "expected a number");
        }
    }

    std::int64_t integer(const std::string& key, std::int64_t lo) const {
        std::int64_t v = 0;
        try {
            v = parse_int(text(key));
        } catch (const Error&) {
            fail(key, "expected an integer");
        }
        if (v < lo) fail(key, "must be at least " + std::to_string(lo));
        return v;
    }

    bool flag(const std::string& key) const {
        auto v = text(key);
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        fail(key, "expected true or false");
    }

    std::string path(const std::string& key) const { return resolve(text(key)); }

    std::string resolve(const std::string& p) const {
        if (p.empty() || fs::path(p).is_absolute()) return p;
        return (fs::path(base_) / p).lexically_normal().string();
    }

    std::vector<std::size_t> sizes(const std::string& key) const {
        std::vector<std::size_t> out;
        for (const auto& cell : split_list(text(key))) {
            try {
                const auto v = parse_int(cell);
                if (v < 1) fail(key, "values must be positive");
                out.push_back(static_cast<std::size_t>(v));
            } catch (const ConfigError&) {
                throw;
            } catch (const Error&) {
                fail(key, "expected a comma list of integers");
            }
        }
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i] <= out[i - 1]) fail(key, "values must be strictly increasing");
        }
        if (out.empty()) fail(key, "must not be empty");
        return out;
    }

    std::vector<double> reals(const std::string& key) const {
        std::vector<double> out;
        for (const auto& cell : split_list(text(key))) {
            try {
                out.push_back(parse_double(cell));
            } catch (const Error&) {
                fail(key, "expected a comma list of numbers");
            }
        }
        if (out.empty()) fail(key, "must not be empty");
        return out;
    }

    [[noreturn]] static void fail(const std::string& key, const std::string& why) {
        throw ConfigError(key + ": " + why);
    }

private:
    const std::map<std::string, std::string>& values_;
    std::string base_;
};

void check(bool ok, const std::string& key, const std::string& why) {
    if (!ok) Reader::fail(key, why);
}

PipelineConfig build(std::map<std::string, std::string> values, const std::string& base_dir) {
    PipelineConfig c;
    Reader r(values, base_dir);

    c.input.articles = r.path("input.articles");
    c.input.sources = r.path("input.sources");
    c.input.entities = r.path("input.entities");
    c.input.tweets = r.path("input.tweets");
    c.input.profiles = r.path("input.profiles");
    c.input.bot_labels = r.path("input.bot_labels");
    c.input.bot_model = r.path("input.bot_model");
    c.input.pages = r.path("input.pages");
    c.input.popularity = r.path("input.popularity");
    c.input.bias_labels = r.path("input.bias_labels");
    for (const auto& [key, value] : values) {
        if (key.rfind("expert.", 0) != 0) continue;
        const auto name = key.substr(7);
        check(!name.empty(), key, "expert name missing");
        check(!value.empty(), key, "path missing");
        c.experts.emplace_back(name, r.resolve(value));
    }

    try {
        c.link_scope = parse_link_scope(r.text("graph.link_scope"));
    } catch (const Error& e) {
        Reader::fail("graph.link_scope", e.what());
    }
    c.damping = r.real("graph.damping");
    check(c.damping > 0.0 && c.damping < 1.0, "graph.damping", "must lie in (0, 1)");
    c.tol = r.real("graph.tol");
    check(c.tol > 0.0, "graph.tol", "must be positive");
    c.max_iter = static_cast<int>(r.integer("graph.max_iter", 1));
    c.tier_boundaries = r.sizes("graph.tier_boundaries");
    check(c.tier_boundaries.front() > 1, "graph.tier_boundaries", "values must exceed 1");
    c.tracked_only = r.flag("graph.tracked_only");

    c.keep_subdomains = split_list(r.text("domain.keep_subdomains"));
    c.public_suffix_file = r.path("domain.public_suffix_file");

    try {
        c.bias_method = parse_aggregation_method(r.text("bias.method"));
    } catch (const Error& e) {
        Reader::fail("bias.method", e.what());
    }
    c.bias_theta = r.real("bias.theta");
    check(c.bias_theta >= 0.0, "bias.theta", "must be non-negative");

    c.ridge_grid = r.reals("bots.ridge_grid");
    for (double v : c.ridge_grid) check(v >= 0.0, "bots.ridge_grid", "values must be non-negative");
    c.bot_max_epochs = static_cast<int>(r.integer("bots.max_epochs", 1));
    c.bot_min_tweets = static_cast<std::size_t>(r.integer("bots.min_tweets", 1));

    c.ads_min_pages = static_cast<std::size_t>(r.integer("ads.min_pages", 1));
    c.ad_patterns.src_substrings = split_list(r.text("ads.src_patterns"));
    c.ad_patterns.id_prefixes = split_list(r.text("ads.id_prefixes"));

    c.percentile = r.real("signals.percentile");
    check(c.percentile > 0.0 && c.percentile <= 100.0, "signals.percentile", "must lie in (0, 100]");
    c.min_population = static_cast<std::size_t>(r.integer("signals.min_population", 1));
    c.popularity_window_days = static_cast<int>(r.integer("popularity.window_days", 1));

    c.ranking.weights = {r.real("rank.w_r"), r.real("rank.w_p"), r.real("rank.w_e"), r.real("rank.w_b")};
    c.ranking.penalty = r.real("rank.penalty");
    check(c.ranking.penalty > 0.0 && c.ranking.penalty <= 1.0, "rank.penalty", "must lie in (0, 1]");

    c.eval_boundaries = r.sizes("eval.boundaries");
    c.eval_per_tier = static_cast<std::size_t>(r.integer("eval.per_tier", 1));

    c.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
    c.output_dir = r.text("output.dir");
    check(!c.output_dir.empty(), "output.dir", "must not be empty");

    c.synth_enabled = r.flag("synth.enabled");
    c.synth.seed = c.seed;
    c.synth.source_count = static_cast<std::size_t>(r.integer("synth.sources", 2));
    c.synth.days = static_cast<int>(r.integer("synth.days", 1));
    c.synth.citation_exponent = r.real("synth.exponent");
    c.synth.quality_shape = r.real("synth.quality_shape");
    c.synth.bias_skew = r.real("synth.bias_skew");
    c.synth.twin_pairs = static_cast<std::size_t>(r.integer("synth.twin_pairs", 0));
    if (const auto fixed = r.integer("synth.articles_per_source", 0); fixed > 0) {
        c.synth.articles_per_source = static_cast<std::size_t>(fixed);
    }
    c.synth.validate();

    c.values = std::move(values);
    return c;
}

} // namespace

std::string PipelineConfig::hash() const {
    std::string canonical;
    for (const auto& [key, value] : values) {
        if (key == "output.dir") continue;
        canonical += key + '=' + value + '\n';
    }
    return string_digest(canonical);
}

std::string default_config_text() {
    std::ostringstream out;
    std::string group;
    out << "# newsrank pipeline configuration\n";
    out << "# Expert rankings are added as  expert.<name> = path/to/list.csv\n";
    for (const auto& k : kKeys) {
        std::string key = k.key;
        const auto dot = key.find('.');
        const std::string g = dot == std::string::npos ? "general" : key.substr(0, dot);
        if (g != group) {
            out << "\n[" << g << "]\n";
            group = g;
        }
        if (*k.help) out << "# " << k.help << '\n';
        out << key << " = " << k.value << '\n';
    }
    return out.str();
}

PipelineConfig parse_config(const std::string& text, const std::string& base_dir,
                            const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> values;
    for (const auto& k : kKeys) values[k.key] = k.value;

    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == '[') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
        }
        std::string key(trim(t.substr(0, eq)));
        auto raw = t.substr(eq + 1);
        // A '#' after whitespace starts a trailing comment.
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (raw[i] == '#' && std::isspace(static_cast<unsigned char>(raw[i - 1]))) {
                raw = raw.substr(0, i);
                break;
            }
        }
        std::string value(trim(raw));
        if (!find_key(key) && key.rfind("expert.", 0) != 0) {
            throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
        }
        values[key] = std::move(value);
    }
    for (const auto& [key, value] : overrides) {
        if (!find_key(key) && key.rfind("expert.", 0) != 0) throw ConfigError("unknown key '" + key + "'");
        values[key] = value;
    }
    return build(std::move(values), base_dir);
}

PipelineConfig load_config(const std::string& path, const std::map<std::string, std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    auto base = fs::path(path).parent_path().string();
    return parse_config(text.str(), base.empty() ? "." : base, overrides);
}

PipelineConfig default_config(const std::map<std::string, std::string>& overrides) {
    return parse_config("", ".", overrides);
}

} // namespace newsrank
