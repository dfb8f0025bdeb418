#include <doctest.h>

#include <sstream>

#include "phishscan/porter_stemmer.hpp"
#include "phishscan/rng.hpp"
#include "phishscan/text_pipeline.hpp"

using namespace phishscan;

namespace {

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

} // namespace

TEST_CASE("porter stemmer worked examples") {
    CHECK(porter_stem("university") == "univers");
    CHECK(porter_stem("calamity") == "calam");
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("happiness") == "happi");
    CHECK(porter_stem("electricity") == "electr");
    CHECK(porter_stem("adoption") == "adopt");
    CHECK(porter_stem("rate") == "rate");
    CHECK(porter_stem("cat") == "cat");
}

TEST_CASE("preprocess pipeline order and stop words") {
    CHECK(preprocess("university") == std::vector<std::string>{"univers"});
    CHECK(preprocess("calamity") == std::vector<std::string>{"calam"});
    CHECK(preprocess("The THE the").empty());
    CHECK(preprocess("").empty());
    CHECK(preprocess("Verify, your PASSWORD!") ==
          std::vector<std::string>{"verifi", "password"});
    // punctuation splits words
    CHECK(preprocess("click-here now") ==
          std::vector<std::string>{"click", "now"});
}

TEST_CASE("preprocess is idempotent on its own joined output") {
    SplitMix64 rng(31);
    std::vector<std::string> samples = {
        "verify your password immediately to restore access",
        "the quarterly meeting moved to thursday afternoon",
        "URGENT!!! claim your prize at http://example.com?id=99",
    };
    for (int i = 0; i < 30; ++i) {
        std::ostringstream os;
        for (int w = 0; w < 8; ++w)
            os << "w" << rng.below(50) << "x" << rng.below(10) << ' ';
        samples.push_back(os.str());
    }
    for (const auto& s : samples) {
        auto once = preprocess(s);
        auto twice = preprocess(join(once));
        CHECK(once == twice);
    }
}

TEST_CASE("embedded stop-word list matches the shipped asset") {
    auto asset = load_stop_words(std::string(PHISHSCAN_SOURCE_DIR) +
                                 "/assets/stopwords_v1.txt");
    CHECK(asset == stop_words());
}

TEST_CASE("vocabulary ranks by frequency then alphabetically") {
    Vocabulary v = Vocabulary::build({{"b", "b", "c", "d", "d"}}, 10);
    // b and d tie-break... b:2 d:2 c:1 -> b, d, c
    CHECK(v.index_of("b") == 1);
    CHECK(v.index_of("d") == 2);
    CHECK(v.index_of("c") == 3);
    CHECK(v.index_of("zzz") == 0);
}

TEST_CASE("vocabulary frequency order and cap") {
    Vocabulary v = Vocabulary::build({{"aa", "bb", "bb"}}, 10);
    CHECK(v.index_of("bb") == 1);
    CHECK(v.index_of("aa") == 2);

    Vocabulary capped = Vocabulary::build({{"aa", "bb", "bb"}}, 1);
    CHECK(capped.size() == 1);
    CHECK(capped.index_of("bb") == 1);
    CHECK(capped.index_of("aa") == 0);

    CHECK_THROWS_AS(Vocabulary::build({}, 5), std::invalid_argument);
}

TEST_CASE("vocabulary is invariant to document order") {
    std::vector<std::vector<std::string>> corpus = {
        {"red", "green"}, {"green", "blue"}, {"blue", "blue"}};
    auto a = Vocabulary::build(corpus, 100);
    std::reverse(corpus.begin(), corpus.end());
    auto b = Vocabulary::build(corpus, 100);
    CHECK(a.words() == b.words());
}

TEST_CASE("vocabulary excludes stop words and round-trips JSON") {
    Vocabulary v = Vocabulary::build({{"do", "verifi", "account"}}, 100);
    CHECK(v.index_of("do") == 0); // stems colliding with stop words stay out
    auto restored = Vocabulary::from_json(v.to_json());
    CHECK(restored.words() == v.words());
    CHECK(restored.max_features() == v.max_features());
}

TEST_CASE("encode pads, truncates from the front, drops OOV") {
    Vocabulary v = Vocabulary::build({{"a1", "b2", "c3", "d4", "e5", "f6", "g7"}}, 100);

    auto empty = encode({}, v, 5);
    CHECK(empty.indices == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(empty.original_length == 0);

    std::vector<std::string> seven = {"a1", "b2", "c3", "d4", "e5", "f6", "g7"};
    auto truncated = encode(seven, v, 5);
    CHECK(truncated.indices.size() == 5);
    CHECK(truncated.original_length == 7);
    // the last five tokens survive
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(truncated.indices[i] == v.index_of(seven[i + 2]));

    auto with_oov = encode({"nope", "a1"}, v, 4);
    CHECK(with_oov.indices == std::vector<int>{0, 0, 0, v.index_of("a1")});

    // all indices within [0, V]
    for (int idx : truncated.indices) {
        CHECK(idx >= 0);
        CHECK(idx <= int(v.size()));
    }
    CHECK_THROWS_AS(encode({}, v, 0), std::invalid_argument);
}

TEST_CASE("encode(preprocess(x)) is deterministic across runs") {
    Vocabulary v = Vocabulary::build(
        {preprocess("verify your password account suspended now")}, 100);
    SplitMix64 rng(77);
    for (int i = 0; i < 20; ++i) {
        std::string text = "Verify account " + std::to_string(rng.below(100)) +
                           " suspended NOW password";
        auto a = encode(preprocess(text), v, 12);
        auto b = encode(preprocess(text), v, 12);
        CHECK(a.indices == b.indices);
    }
}
