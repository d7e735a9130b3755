#include "newsrank/domain.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "newsrank/error.hpp"

namespace newsrank {
namespace {

// Multi-label registries and hosting suffixes. Single-label TLDs need no
// entry: the implicit "*" rule already makes them one-label suffixes.
constexpr std::string_view kBuiltinRules[] = {
    // United Kingdom
    "co.uk", "org.uk", "me.uk", "ltd.uk", "plc.uk", "net.uk", "ac.uk", "gov.uk", "sch.uk", "nhs.uk", "police.uk",
    // Australia / New Zealand
    "com.au", "net.au", "org.au", "edu.au", "gov.au", "asn.au", "id.au",
    "co.nz", "net.nz", "org.nz", "govt.nz", "ac.nz", "school.nz", "geek.nz", "maori.nz",
    // Asia
    "co.jp", "ne.jp", "or.jp", "ac.jp", "go.jp", "gr.jp", "ad.jp", "ed.jp", "lg.jp",
    "co.kr", "or.kr", "ne.kr", "go.kr", "re.kr", "ac.kr",
    "com.cn", "net.cn", "org.cn", "gov.cn", "edu.cn", "ac.cn",
    "com.hk", "net.hk", "org.hk", "gov.hk", "edu.hk", "idv.hk",
    "com.tw", "net.tw", "org.tw", "gov.tw", "edu.tw", "idv.tw",
    "com.sg", "net.sg", "org.sg", "gov.sg", "edu.sg", "per.sg",
    "co.in", "net.in", "org.in", "gov.in", "ac.in", "firm.in", "gen.in", "ind.in", "nic.in",
    "com.pk", "net.pk", "org.pk", "gov.pk", "edu.pk",
    "com.my", "net.my", "org.my", "gov.my", "edu.my",
    "co.id", "or.id", "go.id", "ac.id", "web.id",
    "com.ph", "net.ph", "org.ph", "gov.ph", "edu.ph",
    "co.th", "in.th", "or.th", "go.th", "ac.th",
    "com.vn", "net.vn", "org.vn", "gov.vn", "edu.vn",
    "co.il", "org.il", "net.il", "gov.il", "ac.il", "muni.il",
    "com.sa", "net.sa", "org.sa", "gov.sa", "edu.sa",
    "com.tr", "net.tr", "org.tr", "gov.tr", "edu.tr", "gen.tr", "bel.tr", "av.tr",
    "com.bd", "net.bd", "org.bd", "gov.bd", "edu.bd",
    "com.np", "org.np", "gov.np", "edu.np",
    "com.lk", "org.lk", "gov.lk", "edu.lk",
    "com.qa", "net.qa", "org.qa", "gov.qa",
    "ae.org", "co.ae", "net.ae", "org.ae", "gov.ae", "ac.ae",
    // Americas
    "com.br", "net.br", "org.br", "gov.br", "edu.br", "art.br", "blog.br", "jor.br",
    "com.ar", "net.ar", "org.ar", "gob.ar", "gov.ar", "edu.ar", "int.ar",
    "com.mx", "net.mx", "org.mx", "gob.mx", "edu.mx",
    "com.co", "net.co", "org.co", "gov.co", "edu.co", "nom.co",
    "com.pe", "net.pe", "org.pe", "gob.pe", "edu.pe", "nom.pe",
    "gob.cl", "gov.cl",
    "com.ve", "net.ve", "org.ve", "gob.ve", "co.ve", "web.ve",
    "com.uy", "net.uy", "org.uy", "gub.uy", "edu.uy",
    "com.ec", "net.ec", "org.ec", "gob.ec", "edu.ec",
    "com.bo", "net.bo", "org.bo", "gob.bo", "edu.bo",
    "com.py", "net.py", "org.py", "gov.py", "edu.py",
    "com.do", "net.do", "org.do", "gob.do", "edu.do",
    "com.gt", "net.gt", "org.gt", "gob.gt", "edu.gt",
    "com.pa", "net.pa", "org.pa", "gob.pa", "edu.pa",
    "co.cr", "or.cr", "go.cr", "ac.cr", "fi.cr",
    "com.pr", "net.pr", "org.pr", "gov.pr", "edu.pr",
    "com.jm", "net.jm", "org.jm", "gov.jm", "edu.jm",
    "com.cu", "net.cu", "org.cu", "gov.cu", "edu.cu",
    // Africa
    "co.za", "net.za", "org.za", "gov.za", "ac.za", "web.za",
    "com.ng", "net.ng", "org.ng", "gov.ng", "edu.ng", "name.ng",
    "co.ke", "or.ke", "ne.ke", "go.ke", "ac.ke", "sc.ke",
    "com.eg", "net.eg", "org.eg", "gov.eg", "edu.eg", "eun.eg",
    "co.tz", "or.tz", "ne.tz", "go.tz", "ac.tz",
    "co.ug", "or.ug", "ne.ug", "go.ug", "ac.ug",
    "com.gh", "org.gh", "gov.gh", "edu.gh",
    "co.zw", "org.zw", "gov.zw", "ac.zw",
    "co.ma", "net.ma", "org.ma", "gov.ma", "ac.ma", "press.ma",
    // Europe
    "co.at", "or.at", "gv.at", "ac.at",
    "com.pl", "net.pl", "org.pl", "gov.pl", "edu.pl", "info.pl", "biz.pl",
    "com.ua", "net.ua", "org.ua", "gov.ua", "edu.ua", "in.ua", "kiev.ua",
    "com.ru", "net.ru", "org.ru", "pp.ru", "msk.ru", "spb.ru",
    "com.gr", "net.gr", "org.gr", "gov.gr", "edu.gr",
    "com.cy", "net.cy", "org.cy", "gov.cy", "ac.cy",
    "com.mt", "net.mt", "org.mt", "gov.mt", "edu.mt",
    "co.hu", "info.hu", "org.hu", "priv.hu", "tm.hu",
    "com.pt", "org.pt", "gov.pt", "edu.pt",
    "com.es", "nom.es", "org.es", "gob.es", "edu.es",
    "co.it", "gov.it", "edu.it",
    "com.fr", "asso.fr", "nom.fr", "gouv.fr", "tm.fr",
    "co.no", "priv.no",
    "co.rs", "org.rs", "edu.rs", "in.rs",
    "com.hr", "from.hr", "iz.hr", "name.hr",
    "co.ee", "com.ee", "org.ee", "pri.ee",
    "com.lv", "org.lv", "gov.lv", "edu.lv",
    "co.je", "co.gg", "co.im",
    // Private-section hosting suffixes seen in news crawls
    "blogspot.com", "github.io", "appspot.com", "herokuapp.com", "netlify.app", "azurewebsites.net",
    "cloudfront.net", "s3.amazonaws.com",
};

std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (true) {
        auto dot = host.find('.', start);
        labels.push_back(host.substr(start, dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return labels;
}

std::string join_labels(const std::vector<std::string_view>& labels, std::size_t first) {
    std::string out;
    for (std::size_t i = first; i < labels.size(); ++i) {
        if (i != first) out += '.';
        out.append(labels[i]);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
    });
}

bool is_host_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

bool is_ipv4(const std::vector<std::string_view>& labels) {
    if (labels.size() != 4) return false;
    return std::all_of(labels.begin(), labels.end(), [](std::string_view l) {
        return !l.empty() && l.size() <= 3 &&
               std::all_of(l.begin(), l.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    });
}

[[noreturn]] void fail(std::string_view url, std::string_view why) {
    throw ParseError("cannot parse URL '" + std::string(url) + "': " + std::string(why));
}

} // namespace

std::shared_ptr<const PublicSuffixList> PublicSuffixList::builtin() {
    static const auto list = [] {
        auto psl = std::make_shared<PublicSuffixList>();
        for (auto rule : kBuiltinRules) psl->add_rule(rule);
        return psl;
    }();
    return list;
}

PublicSuffixList PublicSuffixList::parse(std::istream& in) {
    PublicSuffixList psl;
    std::string line;
    while (std::getline(in, line)) {
        auto rule = trim(line);
        if (rule.empty() || rule.starts_with("//")) continue;
        // Only the first whitespace-delimited token is the rule.
        auto end = rule.find_first_of(" \t");
        psl.add_rule(rule.substr(0, end));
    }
    return psl;
}

PublicSuffixList PublicSuffixList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open public suffix list '" + path + "'");
    return parse(in);
}

void PublicSuffixList::add_rule(std::string_view rule) {
    std::string r(trim(rule));
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
    if (r.empty()) return;
    if (r.starts_with("!")) {
        exceptions_.insert(r.substr(1));
    } else if (r.starts_with("*.")) {
        wildcards_.insert(r.substr(2));
    } else {
        rules_.insert(std::move(r));
    }
}

std::size_t PublicSuffixList::suffix_labels(const std::vector<std::string_view>& labels) const {
    const std::size_t n = labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (exceptions_.count(join_labels(labels, i))) return n - i - 1;
    }
    std::size_t best = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t count = n - i;
        if (count <= best) break;
        if (rules_.count(join_labels(labels, i)) || (i + 1 < n && wildcards_.count(join_labels(labels, i + 1)))) {
            best = count;
        }
    }
    return best;
}

bool PublicSuffixList::is_public_suffix(std::string_view host) const {
    auto labels = split_labels(host);
    return suffix_labels(labels) >= labels.size();
}

std::string extract_host(std::string_view url) {
    const auto original = url;
    url = trim(url);
    if (url.empty()) fail(original, "empty");
    if (std::any_of(url.begin(), url.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
        fail(original, "contains whitespace");
    }

    std::string_view rest = url;
    if (auto sep = url.find("://"); sep != std::string_view::npos) {
        if (!is_scheme(url.substr(0, sep))) fail(original, "bad scheme");
        rest = url.substr(sep + 3);
    } else if (url.starts_with("//")) {
        rest = url.substr(2);
    } else if (auto colon = url.find(':'); colon != std::string_view::npos) {
        // "mailto:x", "javascript:..." are opaque URIs; "host:8080/x" is not.
        auto head = url.substr(0, colon);
        if (head.find_first_of("/.") == std::string_view::npos) fail(original, "not a hierarchical URL");
    }

    auto authority = rest.substr(0, rest.find_first_of("/?#"));
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
    if (authority.starts_with("[")) fail(original, "IPv6 literal hosts are not sources");
    if (auto colon = authority.find(':'); colon != std::string_view::npos) {
        auto port = authority.substr(colon + 1);
        if (!std::all_of(port.begin(), port.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            fail(original, "bad port");
        }
        authority = authority.substr(0, colon);
    }
    while (authority.ends_with(".")) authority.remove_suffix(1);

    if (authority.empty()) fail(original, "missing host");
    if (!std::all_of(authority.begin(), authority.end(), is_host_char)) fail(original, "invalid host character");
    if (authority.find('.') == std::string_view::npos) fail(original, "host has no dot");

    std::string host(authority);
    std::transform(host.begin(), host.end(), host.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto label : split_labels(host)) {
        if (label.empty()) fail(original, "empty host label");
    }
    return host;
}

DomainCanonicalizer::DomainCanonicalizer() : psl_(PublicSuffixList::builtin()) {}

DomainCanonicalizer::DomainCanonicalizer(std::shared_ptr<const PublicSuffixList> psl,
                                         std::vector<std::string> keep_subdomains)
    : psl_(std::move(psl)) {
    for (auto& entry : keep_subdomains) {
        auto host = extract_host(entry);
        if (host.starts_with("www.")) host.erase(0, 4);
        keep_.push_back(std::move(host));
    }
    // Longest entries first so the most specific exception wins.
    std::sort(keep_.begin(), keep_.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    keep_.erase(std::unique(keep_.begin(), keep_.end()), keep_.end());
}

std::string DomainCanonicalizer::canonical(std::string_view url) const {
    std::string host = extract_host(url);

    auto labels = split_labels(host);
    if (is_ipv4(labels)) return host;

    if (host.starts_with("www.") && !psl_->is_public_suffix(std::string_view(host).substr(4))) {
        host.erase(0, 4);
        labels = split_labels(host);
    }

    for (const auto& keep : keep_) {
        if (host == keep || (host.size() > keep.size() && host.ends_with(keep) && host[host.size() - keep.size() - 1] == '.')) {
            return keep;
        }
    }

    const std::size_t suffix = psl_->suffix_labels(labels);
    if (suffix >= labels.size()) fail(url, "host is a public suffix");
    return join_labels(labels, labels.size() - suffix - 1);
}

std::string canonical_domain(std::string_view url) {
    static const DomainCanonicalizer canonicalizer;
    return canonicalizer.canonical(url);
}

} // namespace newsrank
