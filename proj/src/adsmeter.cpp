#include "newsrank/adsmeter.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "newsrank/domain.hpp"
#include "newsrank/error.hpp"
#include "newsrank/io.hpp"

namespace newsrank {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool iequals_at(std::string_view text, std::size_t pos, std::string_view word) {
    if (pos + word.size() > text.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
    }
    return true;
}

/// Parses the attributes of a start tag beginning at `pos` (just past the
/// tag name). Returns the position after the closing '>' or end of input.
std::size_t parse_attributes(std::string_view html, std::size_t pos, IframeTag& tag) {
    const std::size_t n = html.size();
    while (pos < n) {
        while (pos < n && (is_space(html[pos]) || html[pos] == '/')) ++pos;
        if (pos >= n) break;
        if (html[pos] == '>') return pos + 1;

        const std::size_t name_start = pos;
        while (pos < n && !is_space(html[pos]) && html[pos] != '=' && html[pos] != '>' && html[pos] != '/') ++pos;
        const std::string name = lower(html.substr(name_start, pos - name_start));
        while (pos < n && is_space(html[pos])) ++pos;

        std::string_view value;
        if (pos < n && html[pos] == '=') {
            ++pos;
            while (pos < n && is_space(html[pos])) ++pos;
            if (pos < n && (html[pos] == '"' || html[pos] == '\'')) {
                const char quote = html[pos++];
                const std::size_t close = html.find(quote, pos);
                const std::size_t end = close == std::string_view::npos ? n : close;
                value = html.substr(pos, end - pos);
                pos = close == std::string_view::npos ? n : close + 1;
            } else {
                const std::size_t value_start = pos;
                while (pos < n && !is_space(html[pos]) && html[pos] != '>') ++pos;
                value = html.substr(value_start, pos - value_start);
            }
        }
        if (name == "src") tag.src = std::string(value);
        else if (name == "id") tag.id = std::string(value);
    }
    return n;
}

} // namespace

bool AdPatternSet::matches(std::string_view src, std::string_view id) const {
    const std::string s = lower(src);
    const std::string i = lower(id);
    for (const auto& p : src_substrings) {
        if (!p.empty() && s.find(lower(p)) != std::string::npos) return true;
    }
    for (const auto& p : id_prefixes) {
        if (!p.empty() && i.rfind(lower(p), 0) == 0) return true;
    }
    return false;
}

std::vector<IframeTag> scan_iframes(std::string_view html) {
    std::vector<IframeTag> tags;
    std::size_t pos = 0;
    const std::size_t n = html.size();
    while ((pos = html.find('<', pos)) != std::string_view::npos) {
        if (html.compare(pos, 4, "<!--") == 0) {
            const std::size_t close = html.find("-->", pos + 4);
            if (close == std::string_view::npos) break; // unterminated comment hides the rest
            pos = close + 3;
            continue;
        }
        if (iequals_at(html, pos + 1, "iframe")) {
            const std::size_t after = pos + 7;
            if (after >= n || is_space(html[after]) || html[after] == '>' || html[after] == '/') {
                IframeTag tag;
                pos = parse_attributes(html, after, tag);
                tags.push_back(std::move(tag));
                continue;
            }
        }
        ++pos;
    }
    return tags;
}

std::size_t count_iframes(std::string_view html) { return scan_iframes(html).size(); }

std::size_t count_ad_iframes(std::string_view html, const AdPatternSet& patterns) {
    const auto tags = scan_iframes(html);
    return static_cast<std::size_t>(
        std::count_if(tags.begin(), tags.end(), [&](const IframeTag& t) { return patterns.matches(t.src, t.id); }));
}

std::optional<AdsAggressiveness> source_ads_score(std::span<const AdScanResult> scans) {
    if (scans.empty()) return std::nullopt;
    std::uint64_t total = 0;
    for (const auto& s : scans) total += s.ad_iframe_count;
    return AdsAggressiveness{scans.front().domain, static_cast<double>(total) / static_cast<double>(scans.size()),
                             scans.size()};
}

void AdsAccumulator::add(const AdScanResult& scan) {
    auto& t = totals_[scan.domain];
    t.first += scan.ad_iframe_count;
    ++t.second;
}

void AdsAccumulator::merge(const AdsAccumulator& other) {
    for (const auto& [domain, t] : other.totals_) {
        totals_[domain].first += t.first;
        totals_[domain].second += t.second;
    }
}

std::map<std::string, AdsAggressiveness> AdsAccumulator::scores() const {
    std::map<std::string, AdsAggressiveness> out;
    for (const auto& [domain, t] : totals_) {
        out.emplace(domain, AdsAggressiveness{domain, static_cast<double>(t.first) / static_cast<double>(t.second),
                                              t.second});
    }
    return out;
}

std::vector<AdPage> load_ad_pages(const std::string& path) {
    JsonLineReader reader(path);
    std::vector<AdPage> pages;
    while (auto j = reader.next()) {
        try {
            AdPage page;
            page.url = j->at("url").get<std::string>();
            page.html = j->at("html").get<std::string>();
            page.domain = j->contains("domain") ? j->at("domain").get<std::string>() : canonical_domain(page.url);
            pages.push_back(std::move(page));
        } catch (const std::exception& e) {
            reader.report().skip(reader.line(), e.what());
        }
    }
    return pages;
}

void write_ad_pages(std::span<const AdPage> pages, const std::string& path) {
    JsonLineWriter out(path);
    for (const auto& p : pages) out.write({{"domain", p.domain}, {"url", p.url}, {"html", p.html}});
    out.close();
}

void write_ads_csv(const std::map<std::string, AdsAggressiveness>& scores, const std::string& path) {
    CsvWriter out(path, {"domain", "mean_ads_per_page", "pages"});
    for (const auto& [domain, s] : scores) {
        out.cell(domain).cell(s.mean_ads_per_page).cell(static_cast<std::uint64_t>(s.pages_scanned));
        out.end_row();
    }
    out.close();
}

std::map<std::string, AdsAggressiveness> read_ads_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::map<std::string, AdsAggressiveness> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 3) throw ParseError("malformed ads row in '" + path + "': " + line);
        out[cells[0]] = {cells[0], parse_double(cells[1]), static_cast<std::size_t>(parse_int(cells[2]))};
    }
    return out;
}

} // namespace newsrank
