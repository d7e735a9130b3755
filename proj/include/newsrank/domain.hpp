#pragma once

#include <istream>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace newsrank {

/// Public-suffix rule set in the publicsuffix.org list format:
/// plain rules ("co.uk"), wildcards ("*.ck") and exceptions ("!www.ck").
/// A host matching no rule falls back to the implicit "*" rule, so any
/// unknown top-level label is treated as a one-label suffix.
class PublicSuffixList {
public:
    /// The built-in rule set: generic TLDs plus common second-level
    /// registries (co.uk, com.au, co.jp, ...) and hosting suffixes.
    static std::shared_ptr<const PublicSuffixList> builtin();

    static PublicSuffixList parse(std::istream& in);
    static PublicSuffixList from_file(const std::string& path);

    void add_rule(std::string_view rule);

    /// Number of trailing labels of `host` that form its public suffix.
    std::size_t suffix_labels(const std::vector<std::string_view>& labels) const;

    bool is_public_suffix(std::string_view host) const;

private:
    std::set<std::string, std::less<>> rules_;
    std::set<std::string, std::less<>> wildcards_;  // stored without "*."
    std::set<std::string, std::less<>> exceptions_; // stored without "!"
};

/// Maps URLs onto source identities: the lowercase registrable domain,
/// with "www." stripped, unless the host sits under an entry of the
/// keep-subdomain list, in which case that entry is the identity.
class DomainCanonicalizer {
public:
    DomainCanonicalizer();
    explicit DomainCanonicalizer(std::shared_ptr<const PublicSuffixList> psl,
                                 std::vector<std::string> keep_subdomains = {});

    /// Throws ParseError on input that is not a URL or bare host name.
    std::string canonical(std::string_view url) const;

    const std::vector<std::string>& keep_subdomains() const { return keep_; }

private:
    std::shared_ptr<const PublicSuffixList> psl_;
    std::vector<std::string> keep_;
};

/// Canonical domain under the built-in suffix list and no exceptions.
std::string canonical_domain(std::string_view url);

/// Lowercase host part of `url` (no port, credentials or trailing dot).
/// Throws ParseError when no plausible host name can be extracted.
std::string extract_host(std::string_view url);

} // namespace newsrank
