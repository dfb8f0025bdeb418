#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "phishscan/errors.hpp"
#include "phishscan/rng.hpp"
#include "phishscan/url_features.hpp"

using namespace phishscan;

namespace {

// Independent character-counting oracle: counts straight off the raw URL
// string, no shared code with the extractor.
std::map<std::string, double> count_oracle(const std::string& url) {
    std::map<std::string, double> out;
    auto count = [&url](char c) {
        return static_cast<double>(std::count(url.begin(), url.end(), c));
    };
    out["nb_dots"] = count('.');
    out["nb_hyphens"] = count('-');
    out["nb_at"] = count('@');
    out["nb_qm"] = count('?');
    out["nb_and"] = count('&');
    out["nb_eq"] = count('=');
    out["nb_underscore"] = count('_');
    out["nb_tilde"] = count('~');
    out["nb_percent"] = count('%');
    out["nb_slash"] = count('/');
    out["nb_star"] = count('*');
    out["nb_colon"] = count(':');
    out["nb_comma"] = count(',');
    out["nb_semicolon"] = count(';');
    out["nb_dollar"] = count('$');
    out["nb_space"] = count(' ');
    out["url_length"] = static_cast<double>(url.size());
    out["nb_digits"] = static_cast<double>(std::count_if(
        url.begin(), url.end(), [](unsigned char c) { return std::isdigit(c); }));
    return out;
}

UrlFeatureVector row(std::vector<double> values, int label) {
    UrlFeatureVector v;
    v.values = std::move(values);
    v.label = label;
    return v;
}

// direct formula evaluation, written before the implementation
double chi2_oracle_for_feature(const std::vector<UrlFeatureVector>& data,
                               std::size_t f) {
    double obs0 = 0, obs1 = 0, n0 = 0, n1 = 0;
    for (const auto& r : data) {
        if (*r.label == 0) { obs0 += r.values[f]; n0 += 1; }
        else { obs1 += r.values[f]; n1 += 1; }
    }
    double total = obs0 + obs1, n = n0 + n1;
    double e0 = total * n0 / n, e1 = total * n1 / n;
    double s = 0;
    if (e0 != 0) s += (obs0 - e0) * (obs0 - e0) / e0;
    if (e1 != 0) s += (obs1 - e1) * (obs1 - e1) / e1;
    return s;
}

} // namespace

TEST_CASE("builtin schema matches the 56/24/7 dataset layout") {
    const auto& schema = FeatureSchema::builtin();
    CHECK(schema.size() == 87);
    CHECK(schema.count(FeatureGroup::url_lexical) == 56);
    CHECK(schema.count(FeatureGroup::page_content) == 24);
    CHECK(schema.count(FeatureGroup::external_service) == 7);

    // names unique
    std::map<std::string, int> seen;
    for (const auto& d : schema.entries()) seen[d.name]++;
    for (const auto& [name, count] : seen) CHECK(count == 1);
}

TEST_CASE("extract_lexical_features counts dots and subdomains") {
    const auto& schema = FeatureSchema::builtin();
    auto vec = extract_lexical_features("http://a.b.example.com/x.y", schema);
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("nb_dots"))] == 4);
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("nb_subdomains"))] == 2);
}

TEST_CASE("extract_lexical_features flags IP-literal hosts") {
    const auto& schema = FeatureSchema::builtin();
    auto vec = extract_lexical_features("http://192.168.0.1/login", schema);
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("ip_literal"))] == 1);
    auto named = extract_lexical_features("http://example.com/login", schema);
    CHECK(named.values[static_cast<std::size_t>(schema.index_of("ip_literal"))] == 0);
}

TEST_CASE("full vector against the independent counting oracle") {
    const std::string url =
        "http://paypal-secure.example.com/https/verify?id=1&t=2";
    const auto& schema = FeatureSchema::builtin();
    auto vec = extract_lexical_features(url, schema);

    for (const auto& [name, expected] : count_oracle(url)) {
        int idx = schema.index_of(name);
        REQUIRE(idx >= 0);
        CHECK_MESSAGE(vec.values[static_cast<std::size_t>(idx)] == expected,
                      "feature ", name);
    }
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("hostname_length"))] ==
          double(std::string("paypal-secure.example.com").size()));
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("https_token"))] == 1);
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("explicit_port"))] == 0);
    CHECK(vec.values[static_cast<std::size_t>(schema.index_of("nb_subdomains"))] == 1);

    // every non-live slot is sentinel 0 and marked imputed
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (!schema.at(i).live_computable) {
            CHECK(vec.values[i] == 0);
            CHECK(vec.imputed[i]);
        } else {
            CHECK_FALSE(vec.imputed[i]);
        }
    }
}

TEST_CASE("extract_lexical_features output is finite and integral counts") {
    const auto& schema = FeatureSchema::builtin();
    SplitMix64 rng(99);
    for (int i = 0; i < 50; ++i) {
        std::string url = "http://h" + std::to_string(rng.next() % 1000) +
                          ".example.com/p" + std::to_string(rng.next() % 1000);
        auto vec = extract_lexical_features(url, schema);
        for (double v : vec.values) {
            CHECK(std::isfinite(v));
            CHECK(v >= 0);
            CHECK(v == std::floor(v));
        }
    }
}

TEST_CASE("malformed URLs raise parse errors naming the component") {
    const auto& schema = FeatureSchema::builtin();
    CHECK_THROWS_AS(extract_lexical_features("not a url", schema), UrlParseError);
    CHECK_THROWS_AS(extract_lexical_features("http://", schema), UrlParseError);
    CHECK_THROWS_AS(extract_lexical_features("http://host:abc/", schema),
                    UrlParseError);
}

TEST_CASE("chi2 score is zero for constant and all-zero features") {
    std::vector<UrlFeatureVector> data;
    for (int i = 0; i < 4; ++i)
        data.push_back(row({1.0, 0.0, double(i % 2)}, i % 2));
    auto scores = chi2_scores(data);
    CHECK(scores[0] == doctest::Approx(0.0));
    CHECK(scores[1] == 0.0); // 0/0 -> 0 convention
    CHECK(scores[2] > 0.0);
}

TEST_CASE("chi2 on a small matrix matches hand evaluation") {
    // 6 samples x 3 features, labels 0,0,0,1,1,1
    std::vector<UrlFeatureVector> data = {
        row({2, 1, 5}, 0), row({1, 0, 4}, 0), row({3, 2, 6}, 0),
        row({8, 1, 5}, 1), row({9, 0, 6}, 1), row({7, 2, 4}, 1),
    };
    // feature 0: obs0=6, obs1=24, total=30, e=15 each -> 2*81/15 = 10.8
    // feature 1: obs0=3, obs1=3 -> 0
    // feature 2: obs0=15, obs1=15 -> 0
    auto scores = chi2_scores(data);
    CHECK(scores[0] == doctest::Approx(10.8));
    CHECK(scores[1] == doctest::Approx(0.0));
    CHECK(scores[2] == doctest::Approx(0.0));
    for (std::size_t f = 0; f < 3; ++f)
        CHECK(scores[f] == doctest::Approx(chi2_oracle_for_feature(data, f))
                               .epsilon(1e-12));
}

TEST_CASE("chi2 error paths") {
    std::vector<UrlFeatureVector> negative = {row({-1}, 0), row({1}, 1)};
    CHECK_THROWS_AS(chi2_scores(negative), std::domain_error);
    std::vector<UrlFeatureVector> one_class = {row({1}, 0), row({2}, 0)};
    CHECK_THROWS_AS(chi2_scores(one_class), std::domain_error);
}

TEST_CASE("chi2 is permutation equivariant in sample order") {
    SplitMix64 rng(7);
    std::vector<UrlFeatureVector> data;
    for (int i = 0; i < 12; ++i) {
        std::vector<double> vals;
        for (int f = 0; f < 4; ++f) vals.push_back(double(rng.below(9)));
        data.push_back(row(vals, i % 2));
    }
    auto base = chi2_scores(data);
    std::vector<UrlFeatureVector> shuffled = data;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    auto permuted = chi2_scores(shuffled);
    for (std::size_t f = 0; f < base.size(); ++f)
        CHECK(base[f] == permuted[f]); // bit-identical
}

TEST_CASE("scaling a column scales its chi2 score linearly") {
    SplitMix64 rng(11);
    std::vector<UrlFeatureVector> data;
    for (int i = 0; i < 10; ++i) {
        std::vector<double> vals;
        for (int f = 0; f < 3; ++f) vals.push_back(double(rng.below(7)) + 1);
        data.push_back(row(vals, i % 2));
    }
    auto base = chi2_scores(data);

    const double c = 3.5;
    std::vector<UrlFeatureVector> scaled = data;
    for (auto& r : scaled) r.values[1] *= c;
    auto after = chi2_scores(scaled);
    CHECK(after[1] == doctest::Approx(c * base[1]).epsilon(1e-12));
    CHECK(after[0] == base[0]);

    // scaling every column preserves the selected index set
    std::vector<UrlFeatureVector> all_scaled = data;
    for (auto& r : all_scaled)
        for (auto& v : r.values) v *= c;
    auto sel_base = select_top_k(base, 2).selected_indices;
    auto sel_scaled = select_top_k(chi2_scores(all_scaled), 2).selected_indices;
    CHECK(sel_base == sel_scaled);
}

TEST_CASE("select_top_k ordering and tie-break") {
    FeatureSelection s = select_top_k({3, 1, 2}, 2);
    CHECK(s.selected_indices == std::vector<int>{0, 2});
    FeatureSelection ties = select_top_k({5, 5, 5}, 3);
    CHECK(ties.selected_indices == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(select_top_k({1, 2}, 0), std::invalid_argument);
    CHECK_THROWS_AS(select_top_k({1, 2}, 3), std::invalid_argument);
}

TEST_CASE("selection round-trips through JSON") {
    FeatureSelection s = select_top_k({0.5, 2.25, 1.0}, 2);
    auto restored = FeatureSelection::from_json(s.to_json());
    CHECK(restored.selected_indices == s.selected_indices);
    CHECK(restored.scores == s.scores);
}
