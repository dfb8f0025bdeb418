#include "phishscan/synthetic.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/rng.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace phishscan {

namespace {

const std::vector<std::string> kPhishingPhrases = {
    "verify your password immediately to restore access",
    "your account has been suspended click the link to unlock",
    "urgent security alert confirm your identity now",
    "update your billing details to avoid account closure",
    "you have won a cash prize claim your reward today",
    "unusual sign in attempt detected confirm your credentials",
    "your mailbox storage is full validate your login to continue",
    "final notice your payment method has expired update card details",
    "confirm your bank account number to receive the refund",
    "act now limited time offer enter your social security number",
};

const std::vector<std::string> kBenignPhrases = {
    "welcome to our library catalog browse the new arrivals",
    "the quarterly meeting moved to thursday afternoon",
    "thanks for the notes from class see you monday",
    "are we still on for lunch tomorrow at noon",
    "the museum opens a new exhibit this weekend",
    "your order of garden seeds shipped this morning",
    "practice for the choir starts at seven tonight",
    "remember to water the plants while we travel",
    "the recipe calls for two cups of flour and butter",
    "photos from the spring open day are in the shared album",
};

const std::vector<std::string> kWords = {
    "blue", "river", "cedar", "north", "garden", "stone", "maple", "harbor",
    "field", "sunny", "lake", "pine", "cloud", "green", "spring", "market",
    "forest", "bridge", "valley", "coast", "meadow", "summit", "grove",
    "delta", "prairie", "orchard", "willow", "canyon", "harvest", "timber",
};

const std::vector<std::string> kTlds = {"com", "org", "net", "io", "edu"};

std::string pick(const std::vector<std::string>& pool, SplitMix64& rng) {
    return pool[rng.below(pool.size())];
}

std::string legit_url(SplitMix64& rng) {
    std::ostringstream url;
    if (rng.below(4) == 0) {
        // intranet-style address: IP host and explicit port are common on
        // legitimate internal links, so neither cue alone means phishing
        if (rng.below(2))
            url << "http://127.0.0.1";
        else
            url << "http://192.168." << rng.below(256) << '.'
                << (1 + rng.below(254));
        url << ':' << (8000 + rng.below(50000)) << '/';
        std::size_t segs = rng.below(3);
        for (std::size_t i = 0; i < segs; ++i) url << pick(kWords, rng) << '/';
        return url.str();
    }
    url << (rng.below(2) ? "https" : "http") << "://";
    if (rng.below(3) == 0) url << "www.";
    url << pick(kWords, rng);
    if (rng.below(4) == 0) url << '-' << pick(kWords, rng);
    url << '.' << pick(kTlds, rng) << '/';
    std::size_t segments = rng.below(3);
    for (std::size_t i = 0; i < segments; ++i) url << pick(kWords, rng) << '/';
    return url.str();
}

std::string phishing_url(SplitMix64& rng) {
    std::ostringstream url;
    switch (rng.below(5)) {
    case 0: { // raw IP host with a digit-heavy login path
        url << "http://" << (10 + rng.below(240)) << '.' << rng.below(256) << '.'
            << rng.below(256) << '.' << (1 + rng.below(254)) << "/secure/login"
            << rng.below(10000) << ".php?id=" << rng.below(100000)
            << "&session=" << rng.below(100000);
        break;
    }
    case 1: { // deep subdomain chain
        url << "http://";
        for (int i = 0; i < 4; ++i) url << pick(kWords, rng) << '.';
        url << pick(kWords, rng) << '.' << pick(kTlds, rng)
            << "/account/update?u=" << rng.below(100000);
        break;
    }
    case 2: { // hyphenated lure with an https token in the path
        url << "http://" << pick(kWords, rng) << "-secure-" << pick(kWords, rng)
            << "-verify." << pick(kTlds, rng) << "/https/confirm?id="
            << rng.below(100000) << "&t=" << rng.below(1000);
        break;
    }
    case 3: { // long percent-and-query salad
        url << "http://" << pick(kWords, rng) << pick(kWords, rng) << '.'
            << pick(kTlds, rng) << "/session~" << rng.below(100000)
            << "/auth%20token=" << rng.below(100000) << "&key="
            << rng.below(100000) << "&step=" << rng.below(100) << "&next="
            << rng.below(100);
        break;
    }
    default: { // userinfo trick plus explicit port
        url << "http://" << pick(kWords, rng) << '.' << pick(kTlds, rng) << ':'
            << (1024 + rng.below(60000)) << "/@" << pick(kWords, rng)
            << "/signin;token=" << rng.below(100000) << ",v=" << rng.below(10);
        break;
    }
    }
    return url.str();
}

} // namespace

const std::vector<std::string>& phishing_phrases() { return kPhishingPhrases; }
const std::vector<std::string>& benign_phrases() { return kBenignPhrases; }

std::string sample_phishing_url(std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, 7001));
    return phishing_url(rng);
}

std::string sample_legitimate_url(std::uint64_t seed) {
    SplitMix64 rng(mix_seed(seed, 7002));
    return legit_url(rng);
}

UrlDataset generate_synthetic_url_dataset(std::size_t n, std::uint64_t seed) {
    const FeatureSchema& schema = FeatureSchema::builtin();
    UrlDataset out{FeatureSchema::builtin(), {}};
    out.rows.reserve(n);
    SplitMix64 rng(mix_seed(seed, 4242));
    for (std::size_t i = 0; i < n; ++i) {
        int label = static_cast<int>(i % 2); // exact 50/50 balance
        // ~10% of each class wears the other class's URL style, which caps
        // achievable accuracy near the reference dataset's regime
        bool crossover = rng.below(10) == 0;
        bool phishing_style = (label == kLabelPhishing) != crossover;
        std::string url = phishing_style ? phishing_url(rng) : legit_url(rng);
        UrlFeatureVector vec = extract_lexical_features(url, schema);
        vec.label = label;
        out.rows.push_back(std::move(vec));
    }
    return out;
}

void write_url_dataset_csv(const UrlDataset& dataset, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    for (std::size_t i = 0; i < dataset.schema.size(); ++i)
        f << dataset.schema.at(i).name << ',';
    f << "status\n";
    for (const auto& row : dataset.rows) {
        for (double v : row.values) {
            if (v == static_cast<long long>(v))
                f << static_cast<long long>(v);
            else
                f << v;
            f << ',';
        }
        f << (*row.label == kLabelPhishing ? "phishing" : "legitimate") << '\n';
    }
}

TextDataset generate_synthetic_text_corpus(std::size_t n, std::uint64_t seed) {
    TextDataset out;
    out.rows.reserve(n);
    SplitMix64 rng(mix_seed(seed, 5150));

    // Long tail of rare filler words so the vocabulary lands at a realistic
    // size (the cap is 10000; the reference corpus yields ~9000 stems).
    const std::size_t n_rare = 8400;
    std::vector<std::string> rare;
    rare.reserve(n_rare);
    for (std::size_t i = 0; i < n_rare; ++i)
        rare.push_back("x" + std::to_string(i) + "q" +
                       std::to_string(rng.below(90) + 10));

    std::size_t rare_cursor = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int label = rng.below(4) == 0 ? 1 : 0; // ~25% spam
        const auto& pool = label == 1 ? kPhishingPhrases : kBenignPhrases;
        std::ostringstream text;
        // spam often opens with harmless filler before the lure
        if (label == 1 && rng.below(3) == 0)
            text << pick(kBenignPhrases, rng) << ' ';
        std::size_t phrases = 1 + rng.below(2);
        for (std::size_t p = 0; p < phrases; ++p) {
            if (p) text << ' ';
            text << pick(pool, rng);
        }
        // sprinkle rare words round-robin so each appears at least once
        std::size_t extras = 2 + rng.below(2);
        for (std::size_t e = 0; e < extras; ++e) {
            text << ' ' << rare[rare_cursor % rare.size()];
            ++rare_cursor;
        }
        out.rows.emplace_back(text.str(), label);
    }

    // duplicate a small slice, mirroring the unique-vs-total gap in the
    // reference corpus
    std::size_t dups = n / 20;
    for (std::size_t i = 0; i + dups < out.rows.size() && i < dups; ++i)
        out.rows[out.rows.size() - 1 - i] = out.rows[i];

    std::unordered_set<std::string> seen;
    for (const auto& [text, label] : out.rows) seen.insert(text);
    out.unique_texts = seen.size();
    return out;
}

void write_text_corpus_csv(const TextDataset& corpus, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << "label,text\n";
    for (const auto& [text, label] : corpus.rows)
        f << (label == 1 ? "spam" : "ham") << ',' << text << '\n';
}

} // namespace phishscan
