#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <lmtk/tokens.hpp>

#include "errc.hpp"
#include "oracles.hpp"

namespace lmtk {
namespace {

using testing::code_of;

std::vector<LandmarkSymbol> random_symbols(std::mt19937_64& gen, std::size_t n) {
    std::uniform_int_distribution<std::size_t> kind(0, kAllKinds.size() - 1);
    std::bernoulli_distribution plus(0.5);
    std::vector<LandmarkSymbol> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({kAllKinds[kind(gen)], plus(gen) ? Polarity::Plus : Polarity::Minus});
    return out;
}

std::string joined(const std::vector<LandmarkSymbol>& s) {
    std::string out;
    for (const auto& x : s) out += x.str();
    return out;
}

TEST(Merge, WorkedExample) {
    const auto symbols = parse_symbol_string("g+ p- s+ p+ p+ p- g- b-");
    EXPECT_EQ(render_token_string(merge_bigrams(symbols)), "(g+p-) (s+p+) (p+p-) (g-b-)");
}

TEST(Merge, EmptyAndSingle) {
    EXPECT_TRUE(merge_bigrams(std::vector<LandmarkSymbol>{}).empty());
    const auto one = merge_bigrams(parse_symbol_string("g+"));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].surface(), "(g+)");
}

TEST(Merge, FromSequence) {
    LandmarkSequence seq;
    seq.landmarks = {{LandmarkKind::G, Polarity::Plus, 0.1, 1}, {LandmarkKind::P, Polarity::Plus, 0.1, 1},
                     {LandmarkKind::G, Polarity::Minus, 0.5, 1}};
    EXPECT_EQ(render_token_string(merge_bigrams(seq)), "(g+p+) (g-)");
}

TEST(Merge, LengthIsHalfRoundedUp) {
    std::mt19937_64 gen(1);
    for (std::size_t n = 0; n < 1000; ++n) {
        const auto s = random_symbols(gen, n % 97);
        EXPECT_EQ(merge_bigrams(s).size(), (s.size() + 1) / 2);
    }
}

TEST(Merge, InnerSymbolsReproduceTheSequence) {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_symbols(gen, static_cast<std::size_t>(trial % 41));
        std::string inner;
        for (const auto& t : merge_bigrams(s)) {
            const std::string surf = t.surface();
            inner += surf.substr(1, surf.size() - 2);
        }
        EXPECT_EQ(inner, joined(s));
    }
}

TEST(Merge, MatchesPairwiseReading) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_symbols(gen, static_cast<std::size_t>(trial % 23));
        std::vector<std::string> strs;
        for (const auto& x : s) strs.push_back(x.str());
        std::vector<std::string> got;
        for (const auto& t : merge_bigrams(s)) got.push_back(t.surface());
        EXPECT_EQ(got, oracle::bigram_surfaces(strs));
    }
}

TEST(Render, SingleToken) {
    const auto t = merge_bigrams(parse_symbol_string("g+ p-"));
    EXPECT_EQ(render_token_string(t), "(g+p-)");
}

TEST(Render, RoundTrip) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 500; ++trial) {
        const auto tokens = merge_bigrams(random_symbols(gen, static_cast<std::size_t>(trial % 33)));
        EXPECT_EQ(parse_token_string(render_token_string(tokens)), tokens);
    }
}

TEST(Render, RejectsUnknown) {
    EXPECT_EQ(code_of([] { parse_token_string("(zz)"); }), Errc::UnknownToken);
    EXPECT_EQ(code_of([] { parse_token_string("(g+p-"); }), Errc::UnknownToken);
    EXPECT_EQ(code_of([] { parse_token_string("(g+p-x)"); }), Errc::UnknownToken);
    EXPECT_EQ(code_of([] { parse_symbol_string("g+ q-"); }), Errc::UnknownToken);
    EXPECT_TRUE(parse_token_string("").empty());
}

TEST(Vocab, EmptyCorpus) {
    EXPECT_TRUE(build_vocabulary(std::vector<std::vector<BigramToken>>{}).empty());
}

TEST(Vocab, CountsRepeats) {
    const auto t = merge_bigrams(parse_symbol_string("g+ p- g+ p-"));
    const std::vector<std::vector<BigramToken>> corpus{t};
    const Vocabulary v = build_vocabulary(corpus);
    EXPECT_EQ(v.size(), 1u);
    EXPECT_EQ(v.count("(g+p-)"), 2u);
}

TEST(Vocab, MatchesRecountAndStaysBounded) {
    std::mt19937_64 gen(5);
    std::vector<std::vector<BigramToken>> corpus;
    for (int d = 0; d < 200; ++d) corpus.push_back(merge_bigrams(random_symbols(gen, 1 + static_cast<std::size_t>(d % 57))));
    const Vocabulary v = build_vocabulary(corpus);
    const auto ref = oracle::recount(corpus);
    EXPECT_EQ(v.size(), ref.size());
    for (const auto& [surface, n] : ref) EXPECT_EQ(v.count(surface), n) << surface;
    EXPECT_LE(v.size(), kMaxVocabulary);
    for (const auto& t : v.tokens()) EXPECT_GE(v.count(t), 1u);
}

TEST(Vocab, FirstAppearanceOrderAndFile) {
    const std::vector<std::vector<BigramToken>> corpus{merge_bigrams(parse_symbol_string("s+ s- g+")),
                                                       merge_bigrams(parse_symbol_string("g+ b+ s+ s-"))};
    const Vocabulary v = build_vocabulary(corpus);
    EXPECT_EQ(v.tokens(), (std::vector<std::string>{"(s+s-)", "(g+)", "(g+b+)"}));
    std::ostringstream out;
    v.write(out);
    EXPECT_EQ(out.str(), "(s+s-)\t2\n(g+)\t1\n(g+b+)\t1\n");
}

TEST(Vocab, MergeEqualsBuildingOverTheConcatenation) {
    std::mt19937_64 gen(6);
    std::vector<std::vector<BigramToken>> a;
    std::vector<std::vector<BigramToken>> b;
    for (int i = 0; i < 20; ++i) a.push_back(merge_bigrams(random_symbols(gen, 9)));
    for (int i = 0; i < 20; ++i) b.push_back(merge_bigrams(random_symbols(gen, 9)));
    Vocabulary merged = build_vocabulary(a);
    merged.merge(build_vocabulary(b));
    auto all = a;
    all.insert(all.end(), b.begin(), b.end());
    const Vocabulary whole = build_vocabulary(all);
    EXPECT_EQ(merged.tokens(), whole.tokens());
    for (const auto& t : whole.tokens()) EXPECT_EQ(merged.count(t), whole.count(t));
}

}  // namespace
}  // namespace lmtk
