#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "newsrank/domain.hpp"
#include "newsrank/error.hpp"

using namespace newsrank;

namespace {

// Fixture suffix list and a brute-force registrable-domain oracle: try
// every suffix of the host against the plain rules and keep the longest.
const std::vector<std::string> kFixtureRules = {"com", "uk", "co.uk", "org.uk", "au", "com.au", "jp", "co.jp"};

std::string oracle_registrable(const std::string& host) {
    std::vector<std::string> labels;
    std::stringstream ss(host);
    for (std::string l; std::getline(ss, l, '.');) labels.push_back(l);
    std::size_t best = 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::string suffix;
        for (std::size_t j = i; j < labels.size(); ++j) suffix += (j > i ? "." : "") + labels[j];
        if (std::find(kFixtureRules.begin(), kFixtureRules.end(), suffix) != kFixtureRules.end())
            best = std::max(best, labels.size() - i);
    }
    std::string out;
    for (std::size_t j = labels.size() - best - 1; j < labels.size(); ++j)
        out += (out.empty() ? "" : ".") + labels[j];
    return out;
}

DomainCanonicalizer fixture_canonicalizer(std::vector<std::string> keep = {}) {
    std::string text = "// fixture\n";
    for (const auto& r : kFixtureRules) text += r + "\n";
    std::istringstream in(text);
    return DomainCanonicalizer(std::make_shared<PublicSuffixList>(PublicSuffixList::parse(in)), std::move(keep));
}

} // namespace

TEST(CanonicalDomain, StripsWwwPrefix) {
    EXPECT_EQ(canonical_domain("https://www.nytimes.com/2018/a.html"), "nytimes.com");
}

TEST(CanonicalDomain, CollapsesToRegistrableDomain) {
    EXPECT_EQ(canonical_domain("http://blogs.example.co.uk/x"), "example.co.uk");
    EXPECT_EQ(canonical_domain("https://edition.cnn.com:443/world?x=1#top"), "cnn.com");
    EXPECT_EQ(canonical_domain("HTTP://User@News.BBC.CO.UK./"), "bbc.co.uk");
    EXPECT_EQ(canonical_domain("theguardian.com/uk"), "theguardian.com");
}

TEST(CanonicalDomain, MatchesSuffixOracleOnFixtureList) {
    const auto canon = fixture_canonicalizer();
    for (const std::string host : {"blogs.example.co.uk", "a.b.c.example.com", "example.com.au", "x.y.co.jp",
                                   "deep.site.org.uk", "plain.jp", "one.two.uk"}) {
        EXPECT_EQ(canon.canonical("http://" + host + "/p"), oracle_registrable(host)) << host;
    }
}

TEST(CanonicalDomain, RejectsMalformedInput) {
    EXPECT_THROW(canonical_domain("not a url"), ParseError);
    EXPECT_THROW(canonical_domain(""), ParseError);
    EXPECT_THROW(canonical_domain("mailto:someone"), ParseError);
    EXPECT_THROW(canonical_domain("http:///path"), ParseError);
    EXPECT_THROW(canonical_domain("http://co.uk/"), ParseError);
}

TEST(CanonicalDomain, KeepSubdomainExceptions) {
    const auto canon = fixture_canonicalizer({"abc7.example.com", "www.sbnation.com"});
    EXPECT_EQ(canon.canonical("https://news.abc7.example.com/x"), "abc7.example.com");
    EXPECT_EQ(canon.canonical("https://other.example.com/x"), "example.com");
    EXPECT_EQ(canon.canonical("https://sbnation.com/"), "sbnation.com");
}

TEST(CanonicalDomain, WildcardAndExceptionRules) {
    PublicSuffixList psl;
    psl.add_rule("*.ck");
    psl.add_rule("!www.ck");
    const DomainCanonicalizer canon(std::make_shared<PublicSuffixList>(psl));
    EXPECT_EQ(canon.canonical("http://a.b.foo.ck/"), "b.foo.ck");
    EXPECT_EQ(canon.canonical("http://www.ck/"), "www.ck");
}

TEST(CanonicalDomain, IsIdempotent) {
    for (const std::string url : {"https://www.nytimes.com/2018/a.html", "http://blogs.example.co.uk/x",
                                  "https://m.facebook.com/story", "http://192.168.1.20:8080/x",
                                  "https://WWW.Example.COM.au/"}) {
        const auto once = canonical_domain(url);
        EXPECT_EQ(canonical_domain("http://" + once), once) << url;
    }
}
