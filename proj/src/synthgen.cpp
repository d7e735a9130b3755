#include "newsrank/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "newsrank/error.hpp"
#include "newsrank/io.hpp"
#include "newsrank/signals.hpp"

namespace newsrank {
namespace {

namespace fs = std::filesystem;

/// One planted quality level: a single source or a mirrored twin pair.
struct Unit {
    double quality = 0.0;
    std::vector<std::size_t> members; // indices into the source table
};

struct Politician {
    std::string name;
    Wing wing;
};

std::string source_name(std::size_t i) {
    std::ostringstream out;
    out << "source" << std::setw(4) << std::setfill('0') << i << ".com";
    return out.str();
}

std::string padded(std::string_view prefix, std::size_t i, int width = 6) {
    std::ostringstream out;
    out << prefix << std::setw(width) << std::setfill('0') << i;
    return out.str();
}

double lognormal(std::mt19937_64& rng, double mu, double sigma) {
    return std::lognormal_distribution<double>(mu, sigma)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::uint64_t count_of(double v) { return static_cast<std::uint64_t>(std::llround(std::max(0.0, v))); }

std::vector<Politician> build_dictionary(EntityPartyDictionary& dict) {
    const std::vector<std::tuple<std::string, std::string, Wing>> parties = {
        {"Harbor Party", "harbor", Wing::Left},
        {"Meadow Alliance", "meadow", Wing::Left},
        {"Summit Party", "summit", Wing::Right},
        {"Granite League", "granite", Wing::Right},
    };
    std::vector<Politician> out;
    for (const auto& [party, stem, wing] : parties) {
        dict.set_wing(party, wing);
        for (int i = 1; i <= 8; ++i) {
            std::string name = stem + " member " + std::to_string(i);
            dict.add(name, party, wing);
            out.push_back({std::move(name), wing});
        }
    }
    return out;
}

SentimentDistribution skewed_sentiment(std::mt19937_64& rng, double offset) {
    std::uniform_real_distribution<double> base(0.05, 0.45);
    double pos = std::clamp(base(rng) + offset, 0.0, 1.0);
    double neg = std::clamp(base(rng) - offset, 0.0, 1.0);
    if (pos + neg > 1.0) {
        const double s = pos + neg;
        pos /= s;
        neg /= s;
    }
    return {pos, 1.0 - pos - neg, neg};
}

std::string ad_page_html(std::mt19937_64& rng, std::size_t ads, std::size_t other_iframes, std::string_view title) {
    static const std::vector<std::string> ad_frames = {
        R"(<iframe src="https://tpc.googlesyndication.com/safeframe/1-0-40/html/container.html" width="300" height="250"></iframe>)",
        R"(<iframe src='https://ad.doubleclick.net/ddm/adi/N123.site/B456' frameborder=0></iframe>)",
        R"(<iframe id="google_ads_iframe_/1234/news/top_0" src="about:blank" title="3rd party ad content"></iframe>)",
        R"(<IFRAME SRC="https://googleads.g.doubleclick.net/pagead/ads?client=ca-pub-1"></IFRAME>)",
    };
    static const std::vector<std::string> other_frames = {
        R"(<iframe src="https://www.youtube.com/embed/abc123" allowfullscreen></iframe>)",
        R"(<iframe src="https://player.vimeo.com/video/42"></iframe>)",
    };
    std::vector<std::string> blocks;
    for (std::size_t i = 0; i < ads; ++i) blocks.push_back(ad_frames[rng() % ad_frames.size()]);
    for (std::size_t i = 0; i < other_iframes; ++i) blocks.push_back(other_frames[rng() % other_frames.size()]);
    std::shuffle(blocks.begin(), blocks.end(), rng);

    std::string html = "<!DOCTYPE html>\n<html><head><title>";
    html += title;
    html += "</title></head>\n<body>\n<!-- layout -->\n<div class=\"story\"><p>Lorem ipsum.</p>\n";
    for (const auto& b : blocks) html += "<div class=\"slot\">" + b + "</div>\n";
    html += "</div></body></html>\n";
    return html;
}

} // namespace

void SynthConfig::validate() const {
    auto fraction = [](double v, std::string_view name) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("synth." + std::string(name) + " must lie in [0, 1]");
    };
    if (source_count < 2) throw ConfigError("synth.sources must be at least 2");
    if (days < 1) throw ConfigError("synth.days must be at least 1");
    if (2 * twin_pairs > source_count) throw ConfigError("synth.twin_pairs needs two sources per pair");
    if (!(quality_shape > 0.0)) throw ConfigError("synth.quality_shape must be positive");
    if (!(citation_exponent >= 0.0)) throw ConfigError("synth.exponent must be non-negative");
    if (!(citations_per_article >= 0.0)) throw ConfigError("synth.citations_per_article must be non-negative");
    if (!(min_articles_per_day >= 0.0 && max_articles_per_day >= min_articles_per_day)) {
        throw ConfigError("synth article rates must satisfy 0 <= min <= max");
    }
    if (!(min_tweets_per_source >= 0.0 && max_tweets_per_source >= min_tweets_per_source)) {
        throw ConfigError("synth tweet counts must satisfy 0 <= min <= max");
    }
    if (bot_users == 0 || human_users == 0) throw ConfigError("synth needs both bot and human users");
    fraction(self_link_rate, "self_link_rate");
    fraction(political_mention_rate, "political_mention_rate");
    fraction(bias_skew, "bias_skew");
    fraction(labeled_user_fraction, "labeled_user_fraction");
    fraction(max_bot_fraction, "max_bot_fraction");
    fraction(heavy_ads_fraction, "heavy_ads_fraction");
    fraction(twin_bot_fraction, "twin_bot_fraction");
    fraction(twin_clean_bot_fraction, "twin_clean_bot_fraction");
    fraction(twin_min_quality, "twin_min_quality");
    fraction(twin_max_quality, "twin_max_quality");
    if (twin_min_quality > twin_max_quality) throw ConfigError("synth twin quality range is empty");
    if (entity_pool == 0) throw ConfigError("synth.entity_pool must be positive");
}

UserProfile synth_profile(std::string user_id, bool bot, std::mt19937_64& rng, bool separable) {
    UserProfile p;
    p.user_id = std::move(user_id);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (bot) {
        p.follower_count = count_of(lognormal(rng, 3.0, 1.2));
        p.followee_count = count_of(lognormal(rng, 7.0, 0.8));
        if (separable) p.followee_count = std::max<std::uint64_t>(p.followee_count, 10 * std::max<std::uint64_t>(p.follower_count, 1));
        p.verified = false;
        p.favourites_count = count_of(lognormal(rng, 3.0, 1.5));
        p.listed_count = count_of(lognormal(rng, 0.0, 0.7));
        p.description_length = count_of(40.0 * unit(rng));
        p.geo_enabled = coin(rng, 0.05);
        p.has_location = coin(rng, 0.2);
        p.has_time_zone = coin(rng, 0.2);
        p.default_profile = coin(rng, 0.8);
        p.default_profile_image = coin(rng, 0.4);
    } else {
        p.follower_count = count_of(lognormal(rng, 6.0, 1.2));
        p.followee_count = count_of(lognormal(rng, 5.5, 1.0));
        if (separable) p.followee_count = std::min(p.followee_count, std::max<std::uint64_t>(p.follower_count, 1) / 2);
        p.verified = coin(rng, 0.05);
        p.favourites_count = count_of(lognormal(rng, 7.0, 1.5));
        p.listed_count = count_of(lognormal(rng, 2.0, 1.0));
        p.description_length = count_of(20.0 + 140.0 * unit(rng));
        p.geo_enabled = coin(rng, 0.3);
        p.has_location = coin(rng, 0.7);
        p.has_time_zone = coin(rng, 0.6);
        p.default_profile = coin(rng, 0.2);
        p.default_profile_image = coin(rng, 0.02);
    }
    return p;
}

BotDataset make_bot_dataset(std::size_t per_class, std::uint64_t seed, bool separable) {
    std::mt19937_64 rng(seed);
    BotDataset out;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool bot = i % 2 == 0;
        out.profiles.push_back(synth_profile(padded("u", i), bot, rng, separable));
        out.is_bot.push_back(bot ? 1 : 0);
    }
    return out;
}

SynthCorpus generate(const SynthConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SynthCorpus corpus;
    const auto politicians = build_dictionary(corpus.dictionary);

    // Sources and planted parameters.
    const std::size_t n = cfg.source_count;
    corpus.truth.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        corpus.truth[i].domain = source_name(i + 1);
        SourceRecord s;
        s.domain = corpus.truth[i].domain;
        s.country = "us";
        s.language = "en";
        s.topic = Topic::General;
        corpus.sources.push_back(std::move(s));
    }

    std::vector<Unit> units;
    for (std::size_t pair = 0; pair < cfg.twin_pairs; ++pair) {
        Unit u;
        u.quality = cfg.twin_min_quality + (cfg.twin_max_quality - cfg.twin_min_quality) * unit(rng);
        u.members = {2 * pair, 2 * pair + 1};
        units.push_back(std::move(u));
    }
    for (std::size_t i = 2 * cfg.twin_pairs; i < n; ++i) {
        units.push_back({std::pow(unit(rng), cfg.quality_shape), {i}});
    }

    for (const auto& u : units) {
        const Lean lean = coin(rng, 0.5) ? Lean::Left : Lean::Right;
        const bool heavy_ads = u.members.size() == 1 && coin(rng, cfg.heavy_ads_fraction);
        const double ads_mean = heavy_ads ? 10.0 + 15.0 * unit(rng) : 3.0 * unit(rng);
        const double bot_fraction = cfg.max_bot_fraction * std::pow(unit(rng), 2.0);
        for (std::size_t k = 0; k < u.members.size(); ++k) {
            auto& t = corpus.truth[u.members[k]];
            t.quality = u.quality;
            t.lean = lean;
            t.ads_mean = ads_mean;
            t.bot_fraction = bot_fraction;
            if (u.members.size() == 2) {
                // The bot twin is the alphabetically first, so ties could never favour it.
                t.twin = corpus.truth[u.members[1 - k]].domain;
                t.bot_twin = k == 0;
                t.bot_fraction = k == 0 ? cfg.twin_bot_fraction : cfg.twin_clean_bot_fraction;
            }
        }
    }

    std::vector<double> target_weights;
    for (const auto& u : units) target_weights.push_back(std::pow(u.quality, cfg.citation_exponent));
    const bool all_zero = std::all_of(target_weights.begin(), target_weights.end(), [](double w) { return w <= 0.0; });
    if (all_zero) std::fill(target_weights.begin(), target_weights.end(), 1.0);
    std::discrete_distribution<std::size_t> pick_unit(target_weights.begin(), target_weights.end());

    // Articles, generated once per unit and mirrored onto each member.
    const Timestamp start = parse_timestamp(cfg.start_date);
    std::poisson_distribution<int> citations(cfg.citations_per_article);
    std::poisson_distribution<int> general_entities(cfg.entities_per_sentence);
    std::uniform_int_distribution<int> second_of_day(0, 86'399);
    std::size_t article_counter = 0;
    for (const auto& u : units) {
        const double rate =
            cfg.min_articles_per_day + (cfg.max_articles_per_day - cfg.min_articles_per_day) * u.quality;
        std::vector<Timestamp> stamps;
        if (cfg.articles_per_source) {
            std::uniform_int_distribution<int> day(0, cfg.days - 1);
            for (std::size_t a = 0; a < *cfg.articles_per_source; ++a) {
                stamps.push_back(start + std::chrono::days(day(rng)) + std::chrono::seconds(second_of_day(rng)));
            }
            std::sort(stamps.begin(), stamps.end());
        } else {
            std::poisson_distribution<int> per_day(rate);
            for (int d = 0; d < cfg.days; ++d) {
                const int count = per_day(rng);
                for (int a = 0; a < count; ++a) {
                    stamps.push_back(start + std::chrono::days(d) + std::chrono::seconds(second_of_day(rng)));
                }
            }
        }
        const Lean lean = corpus.truth[u.members.front()].lean;

        for (const auto& stamp : stamps) {
            ArticleRecord base;
            base.published_at = stamp;
            for (std::size_t s = 0; s < cfg.sentences_per_article; ++s) {
                SentenceAnnotation sentence;
                double offset = 0.0;
                if (coin(rng, cfg.political_mention_rate)) {
                    const auto& p = politicians[rng() % politicians.size()];
                    sentence.entity_mentions.push_back(p.name);
                    const bool favoured = (p.wing == Wing::Left) == (lean == Lean::Left);
                    offset = favoured ? cfg.bias_skew : -cfg.bias_skew;
                }
                const int extra = general_entities(rng);
                for (int e = 0; e < extra; ++e) {
                    const double v = unit(rng);
                    const auto idx = static_cast<std::size_t>(v * v * static_cast<double>(cfg.entity_pool));
                    sentence.entity_mentions.push_back(padded("entity ", std::min(idx, cfg.entity_pool - 1), 5));
                }
                sentence.sentiment = skewed_sentiment(rng, offset);
                base.sentences.push_back(std::move(sentence));
            }

            // Targets as member slots: -1 for "self", otherwise a source index.
            std::vector<std::vector<long>> targets; // one entry per draw, listing members
            const int c = citations(rng);
            for (int k = 0; k < c; ++k) {
                const auto& target = units[pick_unit(rng)];
                std::vector<long> members(target.members.begin(), target.members.end());
                targets.push_back(std::move(members));
            }
            const bool self_link = coin(rng, cfg.self_link_rate);
            const std::size_t story = ++article_counter;

            for (std::size_t m = 0; m < u.members.size(); ++m) {
                const std::size_t me = u.members[m];
                // Mirror: swap the twins inside citation targets.
                auto mirror = [&](std::size_t idx) {
                    if (u.members.size() == 2 && m == 1) {
                        if (idx == u.members[0]) return u.members[1];
                        if (idx == u.members[1]) return u.members[0];
                    }
                    return idx;
                };
                ArticleRecord a = base;
                const auto& domain = corpus.truth[me].domain;
                a.article_id = padded("a", story, 7) + (u.members.size() == 2 ? "-" + std::to_string(m) : "");
                a.source_domain = domain;
                a.url = "https://www." + domain + "/story/" + a.article_id;
                std::size_t link = 0;
                for (const auto& draw : targets) {
                    for (long idx : draw) {
                        const auto& target = corpus.truth[mirror(static_cast<std::size_t>(idx))].domain;
                        ++corpus.citation_draws[target];
                        a.citation_urls.push_back("https://www." + target + "/story/ref" + std::to_string(++link));
                    }
                }
                if (self_link) a.citation_urls.push_back("https://" + domain + "/archive/" + a.article_id);
                a.all_link_urls = a.citation_urls;
                a.all_link_urls.push_back("https://" + domain + "/section/politics");
                a.all_link_urls.push_back("https://twitter.com/intent/tweet?url=" + domain);
                corpus.articles.push_back(std::move(a));
            }
        }
    }
    std::stable_sort(corpus.articles.begin(), corpus.articles.end(),
                     [](const ArticleRecord& a, const ArticleRecord& b) { return a.published_at < b.published_at; });

    // Users.
    std::vector<std::string> bot_ids, human_ids;
    for (std::size_t i = 0; i < cfg.bot_users + cfg.human_users; ++i) {
        const bool bot = i < cfg.bot_users;
        auto id = padded(bot ? "b" : "h", i);
        corpus.profiles.push_back(synth_profile(id, bot, rng));
        if (coin(rng, cfg.labeled_user_fraction)) corpus.bot_labels[id] = bot ? BotLabel::Bot : BotLabel::Human;
        (bot ? bot_ids : human_ids).push_back(std::move(id));
    }

    // Tweets: same volume for twins, authorship drawn per source.
    std::size_t tweet_counter = 0;
    std::uniform_int_distribution<int> tweet_second(0, cfg.days * 86'400 - 1);
    for (const auto& u : units) {
        const auto count = static_cast<std::size_t>(std::llround(
            cfg.min_tweets_per_source + (cfg.max_tweets_per_source - cfg.min_tweets_per_source) * u.quality));
        for (std::size_t me : u.members) {
            const auto& t = corpus.truth[me];
            for (std::size_t k = 0; k < count; ++k) {
                TweetRecord tw;
                tw.tweet_id = padded("t", ++tweet_counter, 8);
                const bool bot = coin(rng, t.bot_fraction);
                const auto& pool = bot ? bot_ids : human_ids;
                tw.user_id = pool[rng() % pool.size()];
                tw.posted_at = start + std::chrono::seconds(tweet_second(rng));
                tw.target_domains.push_back(t.domain);
                corpus.tweets.push_back(std::move(tw));
            }
        }
    }

    // Ad pages, shared by twins.
    std::poisson_distribution<int> other_frames(0.5);
    for (const auto& u : units) {
        const double ads_mean = corpus.truth[u.members.front()].ads_mean;
        std::poisson_distribution<int> ads(ads_mean);
        for (std::size_t p = 0; p < cfg.pages_per_source; ++p) {
            const auto count = static_cast<std::size_t>(ads(rng));
            const auto others = static_cast<std::size_t>(other_frames(rng));
            const auto html = ad_page_html(rng, count, others, "page " + std::to_string(p));
            for (std::size_t me : u.members) {
                const auto& domain = corpus.truth[me].domain;
                corpus.pages.push_back({domain, "https://www." + domain + "/page/" + std::to_string(p), html});
            }
        }
    }

    // Popularity feed, shared by twins.
    std::normal_distribution<double> rank_noise(0.0, 0.1);
    for (const auto& u : units) {
        std::vector<PopularityEntry> entries;
        for (int d = 0; d < cfg.days; ++d) {
            const double expected = std::pow(kMaxPopularityRank, 1.0 - u.quality) * std::exp(rank_noise(rng));
            const auto rank = static_cast<std::uint32_t>(std::clamp(std::llround(expected), 1LL, 1'000'000LL));
            entries.push_back({start + std::chrono::days(d), rank});
        }
        for (std::size_t me : u.members) corpus.popularity[corpus.truth[me].domain] = entries;
    }

    if (cfg.bias_skew > 0.0) {
        for (const auto& t : corpus.truth) corpus.bias_labels[t.domain] = t.lean;
    }
    corpus.planted_ranking.name = "planted";
    corpus.planted_ranking.domains = planted_order(corpus);
    return corpus;
}

std::vector<std::string> planted_order(const SynthCorpus& corpus) {
    std::vector<const PlantedSource*> order;
    for (const auto& t : corpus.truth) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const PlantedSource* a, const PlantedSource* b) {
        if (a->quality != b->quality) return a->quality > b->quality;
        return a->domain < b->domain;
    });
    std::vector<std::string> out;
    for (const auto* t : order) out.push_back(t->domain);
    return out;
}

SynthPaths write_corpus(const SynthCorpus& corpus, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
    auto at = [&](std::string_view name) { return (fs::path(dir) / name).string(); };
    SynthPaths paths{at("sources.csv"),     at("articles.jsonl"),   at("tweets.jsonl"),   at("profiles.jsonl"),
                     at("bot_labels.csv"),  at("pages.jsonl"),      at("entities.tsv"),   at("popularity.csv"),
                     at("bias_labels.csv"), at("expert_planted.csv"), at("planted_truth.csv")};

    {
        CsvWriter out(paths.sources, {"domain", "country", "language", "topic", "is_political"});
        for (const auto& s : corpus.sources) {
            out.cell(s.domain).cell(s.country).cell(s.language).cell(to_string(s.topic)).cell(s.is_political ? 1 : 0);
            out.end_row();
        }
        out.close();
    }
    {
        JsonLineWriter out(paths.articles);
        for (const auto& a : corpus.articles) out.write(to_json(a));
        out.close();
    }
    {
        JsonLineWriter out(paths.tweets);
        for (const auto& t : corpus.tweets) {
            std::vector<std::string> urls;
            for (const auto& d : t.target_domains) urls.push_back("https://www." + d + "/story/shared");
            out.write({{"tweet_id", t.tweet_id}, {"user_id", t.user_id}, {"posted_at", format_timestamp(t.posted_at)},
                       {"urls", urls}});
        }
        out.close();
    }
    {
        JsonLineWriter out(paths.profiles);
        for (const auto& p : corpus.profiles) out.write(to_json(p));
        out.close();
    }
    {
        CsvWriter out(paths.bot_labels, {"user_id", "label"});
        for (const auto& [id, label] : corpus.bot_labels) {
            out.cell(id).cell(label == BotLabel::Bot ? "bot" : "human");
            out.end_row();
        }
        out.close();
    }
    write_ad_pages(corpus.pages, paths.pages);
    {
        std::ofstream out(paths.entities);
        if (!out) throw IoError("cannot write '" + paths.entities + "'");
        out << "entity\tparty\twing\n";
        for (const auto& [entity, party] : corpus.dictionary.entities()) {
            out << entity << '\t' << party << '\t' << to_string(corpus.dictionary.wing_of(party)) << '\n';
        }
        if (!out) throw IoError("write failed for '" + paths.entities + "'");
    }
    {
        CsvWriter out(paths.popularity, {"domain", "date", "rank"});
        for (const auto& [domain, entries] : corpus.popularity) {
            for (const auto& e : entries) {
                out.cell(domain).cell(format_date(e.date)).cell(static_cast<std::uint64_t>(e.rank));
                out.end_row();
            }
        }
        out.close();
    }
    {
        CsvWriter out(paths.bias_labels, {"domain", "label"});
        for (const auto& [domain, lean] : corpus.bias_labels) {
            out.cell(domain).cell(to_string(lean));
            out.end_row();
        }
        out.close();
    }
    {
        std::ofstream out(paths.expert_planted);
        if (!out) throw IoError("cannot write '" + paths.expert_planted + "'");
        out << "# topic=" << corpus.planted_ranking.topic << "\n# group=synthetic\nrank,domain\n";
        for (std::size_t i = 0; i < corpus.planted_ranking.domains.size(); ++i) {
            out << i + 1 << ',' << corpus.planted_ranking.domains[i] << '\n';
        }
        if (!out) throw IoError("write failed for '" + paths.expert_planted + "'");
    }
    {
        CsvWriter out(paths.truth, {"domain", "quality", "lean", "bot_fraction", "ads_mean", "twin", "bot_twin"});
        for (const auto& t : corpus.truth) {
            out.cell(t.domain).cell(t.quality).cell(to_string(t.lean)).cell(t.bot_fraction).cell(t.ads_mean);
            out.cell(t.twin).cell(t.bot_twin ? 1 : 0);
            out.end_row();
        }
        out.close();
    }
    return paths;
}

} // namespace newsrank
