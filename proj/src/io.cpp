#include "newsrank/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include <openssl/evp.h>

#include "newsrank/error.hpp"

namespace newsrank {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    auto s = v.get<std::string>();
    if (s.empty()) throw ParseError(std::string("field '") + key + "' is empty");
    return s;
}

std::vector<std::string> string_list(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must hold strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Timestamp timestamp_field(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (v.is_number_integer()) return Timestamp{std::chrono::seconds{v.get<std::int64_t>()}};
    if (v.is_string()) return parse_timestamp(v.get_ref<const std::string&>());
    throw ParseError(std::string("field '") + key + "' must be a timestamp");
}

std::uint64_t count_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return 0;
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    if (it->is_number_integer()) {
        auto v = it->get<std::int64_t>();
        if (v < 0) throw ParseError(std::string("field '") + key + "' must be non-negative");
        return static_cast<std::uint64_t>(v);
    }
    throw ParseError(std::string("field '") + key + "' must be an integer");
}

bool flag_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return false;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number_integer()) return it->get<std::int64_t>() != 0;
    throw ParseError(std::string("field '") + key + "' must be a boolean");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

/// Iterates the data lines of a delimited text file, skipping blank lines,
/// '#' comments and a header line whose first cell is `header_first`.
template <typename Fn>
void for_each_row(const std::string& path, char sep, std::string_view header_first, LoadReport& report, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    report.path = path;
    std::string line;
    std::size_t line_no = 0;
    bool first_data = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto t = trim(line);
        if (t.empty() || t.starts_with("#")) continue;
        auto cells = split_csv(line, sep);
        if (first_data) {
            first_data = false;
            if (!cells.empty() && lower(trim(cells[0])) == header_first) continue;
        }
        try {
            fn(cells, line_no);
        } catch (const ParseError& e) {
            report.skip(line_no, e.what());
        }
    }
}

void expect_cells(const std::vector<std::string>& cells, std::size_t n) {
    if (cells.size() < n) {
        throw ParseError("expected " + std::to_string(n) + " fields, got " + std::to_string(cells.size()));
    }
}

} // namespace

void LoadReport::skip(std::size_t line, const std::string& why) {
    ++skipped;
    diagnostics.push_back(path + ":" + std::to_string(line) + ": " + why);
}

// ---------------------------------------------------------------------------

ArticleRecord article_from_json(const json& j, const DomainCanonicalizer& canon) {
    if (!j.is_object()) throw ParseError("record is not an object");
    ArticleRecord a;
    a.article_id = require_string(j, "article_id");
    a.source_domain = canon.canonical(require_string(j, "source_domain"));
    a.url = j.value("url", std::string{});
    a.published_at = timestamp_field(j, "published_at");
    if (auto it = j.find("sentences"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError("field 'sentences' must be an array");
        a.sentences.reserve(it->size());
        for (const auto& s : *it) {
            SentenceAnnotation sentence;
            if (auto t = s.find("text"); t != s.end() && t->is_string()) sentence.text = t->get<std::string>();
            const auto& sent = require(s, "sentiment");
            if (!sent.is_array() || sent.size() != 3 ||
                !std::all_of(sent.begin(), sent.end(), [](const json& v) { return v.is_number(); })) {
                throw ParseError("sentiment must be a [pos, neu, neg] triple");
            }
            sentence.sentiment = SentimentDistribution(sent[0].get<double>(), sent[1].get<double>(), sent[2].get<double>());
            if (!sentence.sentiment.is_valid()) throw ParseError("sentiment is not a probability triple");
            sentence.entity_mentions = string_list(s, "entities");
            a.sentences.push_back(std::move(sentence));
        }
    }
    a.citation_urls = string_list(j, "citation_urls");
    a.all_link_urls = string_list(j, "all_link_urls");
    return a;
}

json to_json(const ArticleRecord& a) {
    json sentences = json::array();
    for (const auto& s : a.sentences) {
        json js = {{"sentiment", {s.sentiment.pos(), s.sentiment.neu(), s.sentiment.neg()}},
                   {"entities", s.entity_mentions}};
        if (s.text) js["text"] = *s.text;
        sentences.push_back(std::move(js));
    }
    return {{"article_id", a.article_id},
            {"source_domain", a.source_domain},
            {"url", a.url},
            {"published_at", format_timestamp(a.published_at)},
            {"sentences", std::move(sentences)},
            {"citation_urls", a.citation_urls},
            {"all_link_urls", a.all_link_urls}};
}

TweetRecord tweet_from_json(const json& j, const DomainCanonicalizer& canon) {
    if (!j.is_object()) throw ParseError("record is not an object");
    TweetRecord t;
    t.tweet_id = require_string(j, "tweet_id");
    t.user_id = require_string(j, "user_id");
    t.posted_at = timestamp_field(j, "posted_at");
    for (const auto& url : string_list(j, "urls")) {
        try {
            t.target_domains.push_back(canon.canonical(url));
        } catch (const ParseError&) {
            // Unresolvable links (t.co stubs, opaque URIs) carry no source.
        }
    }
    for (const auto& d : string_list(j, "target_domains")) t.target_domains.push_back(canon.canonical(d));
    return t;
}

json to_json(const TweetRecord& t) {
    return {{"tweet_id", t.tweet_id},
            {"user_id", t.user_id},
            {"posted_at", format_timestamp(t.posted_at)},
            {"target_domains", t.target_domains}};
}

UserProfile profile_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("record is not an object");
    UserProfile p;
    p.user_id = require_string(j, "user_id");
    p.follower_count = count_field(j, "follower_count");
    p.followee_count = count_field(j, "followee_count");
    p.verified = flag_field(j, "verified");
    p.favourites_count = count_field(j, "favourites_count");
    p.listed_count = count_field(j, "listed_count");
    p.description_length = count_field(j, "description_length");
    p.geo_enabled = flag_field(j, "geo_enabled");
    p.has_location = flag_field(j, "has_location");
    p.has_time_zone = flag_field(j, "has_time_zone");
    p.default_profile = flag_field(j, "default_profile");
    p.default_profile_image = flag_field(j, "default_profile_image");
    return p;
}

json to_json(const UserProfile& p) {
    return {{"user_id", p.user_id},
            {"follower_count", p.follower_count},
            {"followee_count", p.followee_count},
            {"verified", p.verified},
            {"favourites_count", p.favourites_count},
            {"listed_count", p.listed_count},
            {"description_length", p.description_length},
            {"geo_enabled", p.geo_enabled},
            {"has_location", p.has_location},
            {"has_time_zone", p.has_time_zone},
            {"default_profile", p.default_profile},
            {"default_profile_image", p.default_profile_image}};
}

// ---------------------------------------------------------------------------

JsonLineReader::JsonLineReader(const std::string& path) : in_(path) {
    if (!in_) throw IoError("cannot open '" + path + "'");
    report_.path = path;
}

std::optional<json> JsonLineReader::next() {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (trim(text).empty()) continue;
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            report_.skip(line_, std::string("invalid JSON: ") + e.what());
        }
    }
    return std::nullopt;
}

ArticleReader::ArticleReader(const std::string& path, DomainCanonicalizer canon)
    : reader_(path), canon_(std::move(canon)) {}

std::optional<ArticleRecord> ArticleReader::next() {
    while (auto j = reader_.next()) {
        try {
            auto article = article_from_json(*j, canon_);
            if (!seen_ids_.insert(article.article_id).second) {
                throw ParseError("duplicate article_id '" + article.article_id + "'");
            }
            ++reader_.report().records;
            return article;
        } catch (const ParseError& e) {
            reader_.report().skip(reader_.line(), e.what());
        } catch (const json::exception& e) {
            reader_.report().skip(reader_.line(), e.what());
        }
    }
    return std::nullopt;
}

TweetReader::TweetReader(const std::string& path, DomainCanonicalizer canon, std::set<std::string, std::less<>> tracked)
    : reader_(path), canon_(std::move(canon)), tracked_(std::move(tracked)) {}

std::optional<TweetRecord> TweetReader::next() {
    while (auto j = reader_.next()) {
        try {
            auto tweet = tweet_from_json(*j, canon_);
            if (!seen_ids_.insert(tweet.tweet_id).second) {
                throw ParseError("duplicate tweet_id '" + tweet.tweet_id + "'");
            }
            if (!tracked_.empty()) {
                std::erase_if(tweet.target_domains, [&](const std::string& d) { return !tracked_.contains(d); });
            }
            if (tweet.target_domains.empty()) {
                ++reader_.report().dropped;
                continue;
            }
            ++reader_.report().records;
            return tweet;
        } catch (const ParseError& e) {
            reader_.report().skip(reader_.line(), e.what());
        } catch (const json::exception& e) {
            reader_.report().skip(reader_.line(), e.what());
        }
    }
    return std::nullopt;
}

std::vector<ArticleRecord> load_articles(const std::string& path, LoadReport* report, const DomainCanonicalizer& canon) {
    ArticleReader reader(path, canon);
    std::vector<ArticleRecord> out;
    while (auto a = reader.next()) out.push_back(std::move(*a));
    if (report) *report = reader.report();
    return out;
}

std::vector<TweetRecord> load_tweets(const std::string& path, LoadReport* report, const DomainCanonicalizer& canon,
                                     const std::set<std::string, std::less<>>& tracked) {
    TweetReader reader(path, canon, tracked);
    std::vector<TweetRecord> out;
    while (auto t = reader.next()) out.push_back(std::move(*t));
    if (report) *report = reader.report();
    return out;
}

std::vector<UserProfile> load_profiles(const std::string& path, LoadReport* report) {
    JsonLineReader reader(path);
    std::unordered_set<std::string> seen;
    std::vector<UserProfile> out;
    while (auto j = reader.next()) {
        try {
            auto p = profile_from_json(*j);
            if (!seen.insert(p.user_id).second) throw ParseError("duplicate user_id '" + p.user_id + "'");
            out.push_back(std::move(p));
            ++reader.report().records;
        } catch (const ParseError& e) {
            reader.report().skip(reader.line(), e.what());
        } catch (const json::exception& e) {
            reader.report().skip(reader.line(), e.what());
        }
    }
    if (report) *report = reader.report();
    return out;
}

JsonLineWriter::JsonLineWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write '" + path + "'");
}

void JsonLineWriter::write(const json& value) {
    out_ << value.dump() << '\n';
    if (!out_) throw IoError("write failed for '" + path_ + "'");
}

void JsonLineWriter::close() {
    out_.close();
    if (out_.fail()) throw IoError("close failed for '" + path_ + "'");
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_csv(std::string_view line, char sep) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == sep) {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error("cannot format double");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("invalid number '" + std::string(text) + "'");
    }
    return v;
}

std::int64_t parse_int(std::string_view text) {
    text = trim(text);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("invalid integer '" + std::string(text) + "'");
    }
    return v;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view text) {
    if (row_started_) out_ << ',';
    row_started_ = true;
    if (text.find_first_of(",\"\n") != std::string_view::npos) {
        out_ << '"';
        for (char c : text) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    } else {
        out_ << text;
    }
    return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(std::string_view(format_double(value))); }
CsvWriter& CsvWriter::cell(std::int64_t value) { return cell(std::string_view(std::to_string(value))); }
CsvWriter& CsvWriter::cell(std::uint64_t value) { return cell(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::empty_cell() { return cell(std::string_view{}); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
    if (!out_) throw IoError("write failed for '" + path_ + "'");
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw IoError("close failed for '" + path_ + "'");
}

// ---------------------------------------------------------------------------

EntityPartyDictionary load_entity_parties(const std::string& path, LoadReport* report) {
    LoadReport local;
    EntityPartyDictionary dict;
    for_each_row(path, '\t', "entity", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 2);
        auto party = std::string(trim(cells[1]));
        if (party.empty()) throw ParseError("empty party");
        dict.add(cells[0], std::move(party), cells.size() > 2 ? parse_wing(cells[2]) : Wing::Other);
        ++local.records;
    });
    if (report) *report = std::move(local);
    return dict;
}

std::vector<SourceRecord> load_sources(const std::string& path, LoadReport* report, const DomainCanonicalizer& canon) {
    LoadReport local;
    std::vector<SourceRecord> out;
    std::set<std::string, std::less<>> seen;
    for_each_row(path, ',', "domain", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 1);
        SourceRecord s;
        s.domain = canon.canonical(cells[0]);
        if (cells.size() > 1 && !trim(cells[1]).empty()) s.country = lower(trim(cells[1]));
        if (cells.size() > 2 && !trim(cells[2]).empty()) s.language = lower(trim(cells[2]));
        if (cells.size() > 3) s.topic = parse_topic(cells[3]);
        if (cells.size() > 4) {
            auto v = lower(trim(cells[4]));
            if (v == "1" || v == "true") s.is_political = true;
            else if (v == "0" || v == "false") s.is_political = false;
            else if (!v.empty()) throw ParseError("is_political must be 0/1");
        }
        if (!seen.insert(s.domain).second) throw ParseError("duplicate source '" + s.domain + "'");
        out.push_back(std::move(s));
        ++local.records;
    });
    if (report) *report = std::move(local);
    return out;
}

std::map<std::string, Lean> load_bias_labels(const std::string& path, LoadReport* report, const DomainCanonicalizer& canon) {
    LoadReport local;
    std::map<std::string, Lean> out;
    for_each_row(path, ',', "domain", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 2);
        auto lean = parse_lean(cells[1]);
        if (lean == Lean::None) throw ParseError("bias label must be Left or Right");
        out[canon.canonical(cells[0])] = lean;
        ++local.records;
    });
    if (report) *report = std::move(local);
    return out;
}

std::map<std::string, BotLabel> load_bot_labels(const std::string& path, LoadReport* report) {
    LoadReport local;
    std::map<std::string, BotLabel> out;
    for_each_row(path, ',', "user_id", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 2);
        auto id = std::string(trim(cells[0]));
        if (id.empty()) throw ParseError("empty user_id");
        out[id] = parse_bot_label(cells[1]);
        ++local.records;
    });
    if (report) *report = std::move(local);
    return out;
}

ExpertRanking load_expert_ranking(const std::string& path, std::string name, LoadReport* report,
                                  const DomainCanonicalizer& canon) {
    ExpertRanking ranking;
    ranking.name = std::move(name);
    {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open '" + path + "'");
        std::string line;
        while (std::getline(in, line)) {
            auto t = trim(line);
            if (t.empty()) continue;
            if (!t.starts_with("#")) break;
            t.remove_prefix(1);
            auto eq = t.find('=');
            if (eq == std::string_view::npos) continue;
            auto key = lower(trim(t.substr(0, eq)));
            auto value = std::string(trim(t.substr(eq + 1)));
            if (key == "topic") ranking.topic = value;
            else if (key == "group") ranking.group = value;
        }
    }
    LoadReport local;
    std::vector<std::pair<std::int64_t, std::string>> rows;
    std::set<std::string, std::less<>> seen;
    for_each_row(path, ',', "rank", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 2);
        auto rank = parse_int(cells[0]);
        if (rank < 1) throw ParseError("rank must be positive");
        auto domain = canon.canonical(cells[1]);
        if (!seen.insert(domain).second) throw ParseError("duplicate domain '" + domain + "'");
        rows.emplace_back(rank, std::move(domain));
        ++local.records;
    });
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [rank, domain] : rows) ranking.domains.push_back(std::move(domain));
    if (report) *report = std::move(local);
    return ranking;
}

std::map<std::string, std::vector<PopularityEntry>> load_popularity(const std::string& path, LoadReport* report,
                                                                   const DomainCanonicalizer& canon) {
    LoadReport local;
    std::map<std::string, std::vector<PopularityEntry>> out;
    for_each_row(path, ',', "domain", local, [&](const std::vector<std::string>& cells, std::size_t) {
        expect_cells(cells, 3);
        auto rank = parse_int(cells[2]);
        if (rank < 1 || rank > 1'000'000) throw ParseError("popularity rank outside [1, 1000000]");
        out[canon.canonical(cells[0])].push_back({parse_timestamp(cells[1]), static_cast<std::uint32_t>(rank)});
        ++local.records;
    });
    for (auto& [domain, entries] : out) {
        std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.date < b.date; });
    }
    if (report) *report = std::move(local);
    return out;
}

ExternalLabels load_labels(const LabelPaths& paths, std::vector<LoadReport>* reports, const DomainCanonicalizer& canon) {
    ExternalLabels labels;
    auto keep = [&](LoadReport&& r) {
        if (reports) reports->push_back(std::move(r));
    };
    LoadReport r;
    if (!paths.bias_labels.empty()) {
        labels.bias_labels = load_bias_labels(paths.bias_labels, &r, canon);
        keep(std::move(r));
    }
    if (!paths.bot_labels.empty()) {
        labels.bot_labels = load_bot_labels(paths.bot_labels, &r);
        keep(std::move(r));
    }
    for (const auto& [name, path] : paths.expert_rankings) {
        labels.expert_rankings.push_back(load_expert_ranking(path, name, &r, canon));
        keep(std::move(r));
    }
    if (!paths.popularity.empty()) {
        labels.popularity_feed = load_popularity(paths.popularity, &r, canon);
        keep(std::move(r));
    }
    return labels;
}

// ---------------------------------------------------------------------------

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<double>();
}

} // namespace

void snapshot_signals(const SignalTable& table, const std::string& path) {
    JsonLineWriter out(path);
    for (const auto& [domain, v] : table) {
        json raw = {{"pagerank", v.raw.pagerank},
                    {"alexa_mean", optional_number(v.raw.alexa_mean)},
                    {"entities", v.raw.entities},
                    {"gap", optional_number(v.raw.gap)},
                    {"bot", optional_number(v.raw.bot)},
                    {"ads", optional_number(v.raw.ads)}};
        out.write({{"domain", domain},
                   {"f_r", v.f_r},
                   {"f_p", v.f_p},
                   {"f_e", v.f_e},
                   {"f_b", v.f_b},
                   {"f_s", v.f_s ? 1 : 0},
                   {"f_a", v.f_a ? 1 : 0},
                   {"raw", std::move(raw)}});
    }
    out.close();
}

SignalTable read_signal_snapshot(const std::string& path) {
    JsonLineReader reader(path);
    SignalTable table;
    while (auto j = reader.next()) {
        try {
            SignalVector v;
            v.domain = require_string(*j, "domain");
            v.f_r = require(*j, "f_r").get<double>();
            v.f_p = require(*j, "f_p").get<double>();
            v.f_e = require(*j, "f_e").get<double>();
            v.f_b = require(*j, "f_b").get<double>();
            v.f_s = require(*j, "f_s").get<int>() != 0;
            v.f_a = require(*j, "f_a").get<int>() != 0;
            const auto& raw = require(*j, "raw");
            v.raw.pagerank = require(raw, "pagerank").get<double>();
            v.raw.alexa_mean = read_optional(raw, "alexa_mean");
            v.raw.entities = require(raw, "entities").get<std::uint64_t>();
            v.raw.gap = read_optional(raw, "gap");
            v.raw.bot = read_optional(raw, "bot");
            v.raw.ads = read_optional(raw, "ads");
            auto domain = v.domain;
            table.emplace(std::move(domain), std::move(v));
        } catch (const std::exception& e) {
            throw ParseError(path + ":" + std::to_string(reader.line()) + ": corrupt snapshot record: " + e.what());
        }
    }
    if (reader.report().skipped) throw ParseError("corrupt snapshot '" + path + "': " + reader.report().diagnostics.front());
    return table;
}

// ---------------------------------------------------------------------------

namespace {

std::string to_hex(const unsigned char* data, unsigned int len) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[data[i] >> 4];
        out += kHex[data[i] & 0xf];
    }
    return out;
}

struct DigestContext {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    DigestContext() {
        if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
    }
    ~DigestContext() { EVP_MD_CTX_free(ctx); }
    DigestContext(const DigestContext&) = delete;
    DigestContext& operator=(const DigestContext&) = delete;

    void update(const void* data, std::size_t len) { EVP_DigestUpdate(ctx, data, len); }
    std::string hex() {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx, md, &len);
        return to_hex(md, len);
    }
};

} // namespace

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    DigestContext ctx;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        ctx.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return ctx.hex();
}

std::string string_digest(std::string_view bytes) {
    DigestContext ctx;
    ctx.update(bytes.data(), bytes.size());
    return ctx.hex();
}

} // namespace newsrank
