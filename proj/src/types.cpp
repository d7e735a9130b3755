#include "newsrank/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "newsrank/error.hpp"

namespace newsrank {
namespace {

// Howard Hinnant's civil-calendar conversions.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
}

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    auto first = s.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Timestamp parse_timestamp(std::string_view text) {
    const auto original = text;
    text = trim(text);
    auto bad = [&] { return ParseError("invalid timestamp '" + std::string(original) + "'"); };
    if (text.empty()) throw bad();

    if (std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; }) &&
        text.find('-', 1) == std::string_view::npos) {
        std::int64_t secs = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), secs);
        if (ec != std::errc{} || ptr != text.data() + text.size()) throw bad();
        return Timestamp{std::chrono::seconds{secs}};
    }

    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!parse_fixed(text, 0, 4, y) || text.size() < 10 || text[4] != '-' || !parse_fixed(text, 5, 2, mo) ||
        text[7] != '-' || !parse_fixed(text, 8, 2, d)) {
        throw bad();
    }
    std::string_view rest = text.substr(10);
    if (!rest.empty()) {
        if ((rest[0] != 'T' && rest[0] != ' ') || rest.size() < 9 || !parse_fixed(rest, 1, 2, h) || rest[3] != ':' ||
            !parse_fixed(rest, 4, 2, mi) || rest[6] != ':' || !parse_fixed(rest, 7, 2, s)) {
            throw bad();
        }
        rest.remove_prefix(9);
        if (rest.starts_with(".")) {
            rest.remove_prefix(1);
            while (!rest.empty() && std::isdigit(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
        }
        if (rest != "" && rest != "Z" && rest != "+00:00") throw bad();
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) throw bad();
    const auto days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
    return Timestamp{std::chrono::seconds{days * 86400 + h * 3600 + mi * 60 + s}};
}

std::string format_timestamp(Timestamp t) {
    const std::int64_t secs = t.time_since_epoch().count();
    std::int64_t days = secs >= 0 ? secs / 86400 : (secs - 86399) / 86400;
    std::int64_t rem = secs - days * 86400;
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<long long>(y), m, d,
                  static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

std::string format_date(Timestamp t) { return format_timestamp(t).substr(0, 10); }

Topic parse_topic(std::string_view text) {
    const auto t = lower(trim(text));
    if (t == "general") return Topic::General;
    if (t == "world") return Topic::World;
    if (t == "nation") return Topic::Nation;
    if (t == "sport" || t == "sports") return Topic::Sport;
    if (t == "entertainment") return Topic::Entertainment;
    if (t == "business") return Topic::Business;
    if (t == "health") return Topic::Health;
    if (t == "technology" || t == "tech") return Topic::Technology;
    if (t.empty() || t == "unknown") return Topic::Unknown;
    throw ParseError("unknown topic '" + std::string(text) + "'");
}

std::string_view to_string(Topic topic) {
    switch (topic) {
    case Topic::General: return "General";
    case Topic::World: return "World";
    case Topic::Nation: return "Nation";
    case Topic::Sport: return "Sport";
    case Topic::Entertainment: return "Entertainment";
    case Topic::Business: return "Business";
    case Topic::Health: return "Health";
    case Topic::Technology: return "Technology";
    case Topic::Unknown: break;
    }
    return "unknown";
}

Wing parse_wing(std::string_view text) {
    const auto t = lower(trim(text));
    if (t == "left") return Wing::Left;
    if (t == "right") return Wing::Right;
    if (t == "other" || t.empty()) return Wing::Other;
    throw ParseError("unknown wing '" + std::string(text) + "'");
}

std::string_view to_string(Wing wing) {
    switch (wing) {
    case Wing::Left: return "left";
    case Wing::Right: return "right";
    case Wing::Other: break;
    }
    return "other";
}

Lean parse_lean(std::string_view text) {
    const auto t = lower(trim(text));
    if (t == "left" || t == "left-center" || t == "left bias" || t == "left-center bias") return Lean::Left;
    if (t == "right" || t == "right-center" || t == "right bias" || t == "right-center bias") return Lean::Right;
    if (t == "none" || t.empty()) return Lean::None;
    throw ParseError("unknown lean '" + std::string(text) + "'");
}

std::string_view to_string(Lean lean) {
    switch (lean) {
    case Lean::Left: return "Left";
    case Lean::Right: return "Right";
    case Lean::None: break;
    }
    return "None";
}

BotLabel parse_bot_label(std::string_view text) {
    const auto t = lower(trim(text));
    if (t == "bot" || t == "1") return BotLabel::Bot;
    if (t == "human" || t == "0") return BotLabel::Human;
    throw ParseError("unknown bot label '" + std::string(text) + "'");
}

std::string EntityPartyDictionary::normalize(std::string_view name) {
    std::string out = lower(trim(name));
    // Collapse inner whitespace runs so "Nancy  Pelosi" matches "nancy pelosi".
    out.erase(std::unique(out.begin(), out.end(),
                          [](char a, char b) { return std::isspace(static_cast<unsigned char>(a)) && std::isspace(static_cast<unsigned char>(b)); }),
              out.end());
    std::replace_if(out.begin(), out.end(), [](unsigned char c) { return std::isspace(c); }, ' ');
    return out;
}

void EntityPartyDictionary::add(std::string_view entity, std::string party, Wing wing) {
    auto key = normalize(entity);
    if (key.empty()) throw ParseError("empty entity name");
    wings_[party] = wing;
    parties_[std::move(key)] = std::move(party);
}

const std::string* EntityPartyDictionary::party_of(std::string_view entity) const {
    auto it = parties_.find(normalize(entity));
    return it == parties_.end() ? nullptr : &it->second;
}

Wing EntityPartyDictionary::wing_of(const std::string& party) const {
    auto it = wings_.find(party);
    return it == wings_.end() ? Wing::Other : it->second;
}

} // namespace newsrank
