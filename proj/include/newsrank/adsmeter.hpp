#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newsrank {

/// Which iframes count as ads: a src containing any of `src_substrings`
/// or an id starting with any of `id_prefixes`. Matching ignores case.
struct AdPatternSet {
    std::vector<std::string> src_substrings = {"googlesyndication", "doubleclick", "googleads"};
    std::vector<std::string> id_prefixes = {"google_ads_iframe"};

    bool matches(std::string_view src, std::string_view id) const;
};

/// One parsed `<iframe ...>` start tag.
struct IframeTag {
    std::string src;
    std::string id;
};

/// Every iframe start tag in `html`. Comments are skipped, attribute
/// values may be quoted or bare, and truncated markup simply ends the
/// scan. Never throws.
std::vector<IframeTag> scan_iframes(std::string_view html);

std::size_t count_iframes(std::string_view html);
std::size_t count_ad_iframes(std::string_view html, const AdPatternSet& patterns = {});

struct AdScanResult {
    std::string url;
    std::string domain;
    std::size_t ad_iframe_count = 0;
};

struct AdsAggressiveness {
    std::string domain;
    double mean_ads_per_page = 0.0;
    std::size_t pages_scanned = 0;
};

/// Mean ad count over one domain's pages; nullopt for no pages.
std::optional<AdsAggressiveness> source_ads_score(std::span<const AdScanResult> scans);

/// Running (sum, pages) per domain; shards merge by addition.
class AdsAccumulator {
public:
    void add(const AdScanResult& scan);
    void merge(const AdsAccumulator& other);
    std::map<std::string, AdsAggressiveness> scores() const;

private:
    std::map<std::string, std::pair<std::uint64_t, std::size_t>> totals_;
};

/// Pages file: JSON lines {"domain", "url", "html"}. The domain field is
/// optional; when absent it is derived from the url.
struct AdPage {
    std::string domain;
    std::string url;
    std::string html;
};

std::vector<AdPage> load_ad_pages(const std::string& path);
void write_ad_pages(std::span<const AdPage> pages, const std::string& path);

void write_ads_csv(const std::map<std::string, AdsAggressiveness>& scores, const std::string& path);
std::map<std::string, AdsAggressiveness> read_ads_csv(const std::string& path);

} // namespace newsrank
