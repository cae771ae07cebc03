#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmtk/landmarks.hpp"

namespace lmtk {

struct LandmarkSymbol {
    LandmarkKind kind = LandmarkKind::G;
    Polarity polarity = Polarity::Plus;

    static LandmarkSymbol of(const Landmark& lm) { return {lm.kind, lm.polarity}; }
    std::string str() const;

    bool operator==(const LandmarkSymbol&) const = default;
};

// Twelve kind/polarity symbols, so at most 12*12 bigrams + 12 unigram tails.
inline constexpr std::size_t kMaxVocabulary = 12 * 12 + 12;

struct BigramToken {
    LandmarkSymbol first;
    std::optional<LandmarkSymbol> second;  // empty for an odd-length tail

    // "(g+p-)" or "(g+)"
    std::string surface() const;

    bool operator==(const BigramToken&) const = default;
};

// Disjoint pairs (l1 l2)(l3 l4)...; an odd tail becomes a unigram token.
std::vector<BigramToken> merge_bigrams(std::span<const LandmarkSymbol> symbols);
std::vector<BigramToken> merge_bigrams(const LandmarkSequence& seq);

// "g+ p- s+" -> symbols. Throws Error{UnknownToken}.
std::vector<LandmarkSymbol> parse_symbol_string(std::string_view text);

// Space-joined surfaces.
std::string render_token_string(std::span<const BigramToken> tokens);

// Inverse of render_token_string. Throws Error{UnknownToken}.
std::vector<BigramToken> parse_token_string(std::string_view text);

class Vocabulary {
public:
    void add(const BigramToken& token) { add(token.surface()); }
    void add(const std::string& surface, std::size_t count = 1);

    // Adds every token of `other` in its order (counts summed).
    void merge(const Vocabulary& other);

    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }
    const std::vector<std::string>& tokens() const { return tokens_; }  // first-appearance order
    std::size_t count(const std::string& surface) const;

    // One "surface<TAB>count" line per token, first-appearance order.
    void write(std::ostream& out) const;

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::size_t> counts_;
};

Vocabulary build_vocabulary(std::span<const std::vector<BigramToken>> corpus);

}  // namespace lmtk
