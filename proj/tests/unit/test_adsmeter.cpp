#include <random>
#include <string>

#include <gtest/gtest.h>

#include "newsrank/adsmeter.hpp"
#include "support.hpp"

using namespace newsrank;

namespace {

std::string ad_iframe(int i) {
    switch (i % 4) {
    case 0: return R"(<iframe src="https://tpc.googlesyndication.com/safeframe/)" + std::to_string(i) + R"(" width=300></iframe>)";
    case 1: return R"(<IFRAME id="google_ads_iframe_/1234/news_)" + std::to_string(i) + R"(" src="about:blank"></IFRAME>)";
    case 2: return "<iframe src=https://ad.doubleclick.net/x" + std::to_string(i) + " ></iframe>";
    default: return R"(<iframe title='ad' src='//googleads.g.doubleclick.net/pagead'/>)";
    }
}

std::string page_with(int ads, int others) {
    std::string html = "<html><body><h1>News</h1>";
    for (int i = 0; i < ads; ++i) html += "<p>para</p>" + ad_iframe(i);
    for (int i = 0; i < others; ++i) html += R"(<iframe src="https://www.youtube.com/embed/x"></iframe>)";
    return html + "</body></html>";
}

} // namespace

TEST(CountAds, NoIframes) {
    EXPECT_EQ(count_ad_iframes("<html><body>plain</body></html>"), 0u);
    EXPECT_EQ(count_iframes(""), 0u);
}

TEST(CountAds, FourMatchingTwoOther) {
    const auto html = page_with(4, 2);
    EXPECT_EQ(count_iframes(html), 6u);
    EXPECT_EQ(count_ad_iframes(html), 4u);
}

TEST(CountAds, TwentyAdHeavyPage) {
    EXPECT_EQ(count_ad_iframes(page_with(20, 3)), 20u);
}

TEST(CountAds, CommentsAndLookalikesIgnored) {
    const std::string html = "<!-- " + ad_iframe(0) + " --><iframes src=doubleclick></iframes>"
                             "<div data-iframe=\"googleads\"></div>" + ad_iframe(1);
    EXPECT_EQ(count_ad_iframes(html), 1u);
}

TEST(CountAds, CustomPatterns) {
    AdPatternSet patterns;
    patterns.src_substrings = {"adnxs"};
    patterns.id_prefixes = {};
    const std::string html = R"(<iframe src="https://ib.ADNXS.com/tt"></iframe>)" + ad_iframe(0);
    EXPECT_EQ(count_ad_iframes(html, patterns), 1u);
    EXPECT_TRUE(patterns.matches("x.adnxs.com", ""));
}

TEST(CountAds, ParsesAttributes) {
    const auto tags = scan_iframes(R"(<iframe id=frame1 src = "a b" data-x><iframe src='c'>)");
    ASSERT_EQ(tags.size(), 2u);
    EXPECT_EQ(tags[0].id, "frame1");
    EXPECT_EQ(tags[0].src, "a b");
    EXPECT_EQ(tags[1].src, "c");
}

TEST(CountAds, DeterministicAndBoundedByIframes) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto html = page_with(static_cast<int>(rng() % 10), static_cast<int>(rng() % 5));
        const auto n = count_ad_iframes(html);
        EXPECT_EQ(count_ad_iframes(html), n);
        EXPECT_LE(n, count_iframes(html));
    }
}

TEST(CountAds, ConcatenationIsMonotone) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = page_with(static_cast<int>(rng() % 8), 1);
        const auto b = page_with(static_cast<int>(rng() % 8), 2);
        EXPECT_GE(count_ad_iframes(a + b), std::max(count_ad_iframes(a), count_ad_iframes(b)));
    }
}

TEST(CountAds, MutatedMarkupNeverThrows) {
    std::mt19937_64 rng(3);
    const std::string base = page_with(6, 2) + "<!-- open comment " + ad_iframe(2);
    const std::string alphabet = "<>!-=\"' /iframeIFRAME";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string html = base;
        for (int k = 0; k < 1 + static_cast<int>(rng() % 8); ++k) {
            const std::size_t pos = rng() % (html.size() + 1);
            switch (rng() % 3) {
            case 0: html.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
            case 1: if (pos < html.size()) html.erase(pos, 1 + rng() % 5); break;
            default: html.resize(pos); break;
            }
        }
        EXPECT_NO_THROW({
            const auto n = count_ad_iframes(html);
            EXPECT_LE(n, count_iframes(html));
        });
    }
}

TEST(SourceAdsScore, MeanOverPages) {
    const std::vector<AdScanResult> scans = {{"u1", "d.com", 0}, {"u2", "d.com", 0}, {"u3", "d.com", 6}};
    const auto s = source_ads_score(scans);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->mean_ads_per_page, 2.0);
    EXPECT_EQ(s->pages_scanned, 3u);
    const std::vector<AdScanResult> one = {{"u", "d.com", 3}};
    EXPECT_EQ(source_ads_score(one)->mean_ads_per_page, 3.0);
    const std::vector<AdScanResult> zeros = {{"u", "d.com", 0}, {"v", "d.com", 0}};
    EXPECT_EQ(source_ads_score(zeros)->mean_ads_per_page, 0.0);
    EXPECT_FALSE(source_ads_score({}).has_value());
}

TEST(AdsAccumulator, MergeMatchesSinglePass) {
    AdsAccumulator whole, left, right;
    for (int i = 0; i < 20; ++i) {
        const AdScanResult scan{"u" + std::to_string(i), i % 3 ? "a.com" : "b.com", static_cast<std::size_t>(i % 7)};
        whole.add(scan);
        (i < 9 ? left : right).add(scan);
    }
    right.merge(left);
    const auto a = whole.scores();
    const auto b = right.scores();
    ASSERT_EQ(a.size(), b.size());
    for (const auto& [domain, s] : a) {
        EXPECT_EQ(b.at(domain).mean_ads_per_page, s.mean_ads_per_page);
        EXPECT_EQ(b.at(domain).pages_scanned, s.pages_scanned);
    }
}

TEST(AdPages, FileRoundTrip) {
    test_support::TempDir dir;
    const std::vector<AdPage> pages = {{"a.com", "https://a.com/1", page_with(2, 1)}, {"b.com", "https://b.com/", "<p>"}};
    write_ad_pages(pages, dir.file("p.jsonl"));
    const auto back = load_ad_pages(dir.file("p.jsonl"));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].html, pages[0].html);
    test_support::write_file(dir.file("q.jsonl"), R"({"url":"https://www.c.co.uk/x","html":""})" "\n");
    EXPECT_EQ(load_ad_pages(dir.file("q.jsonl")).at(0).domain, "c.co.uk");

    std::map<std::string, AdsAggressiveness> scores = {{"a.com", {"a.com", 2.5, 4}}};
    write_ads_csv(scores, dir.file("ads.csv"));
    EXPECT_EQ(read_ads_csv(dir.file("ads.csv")).at("a.com").mean_ads_per_page, 2.5);
}
