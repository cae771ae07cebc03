#include "lmtk/tokens.hpp"

#include <ostream>

#include "lmtk/error.hpp"

namespace lmtk {

namespace {

LandmarkSymbol symbol_at(std::string_view text, std::size_t pos, std::string_view whole) {
    const Landmark lm = [&] {
        try {
            return parse_landmark_symbol(text.substr(pos, 2));
        } catch (const Error&) {
            throw Error(Errc::UnknownToken, "unknown token '" + std::string(whole) + "'");
        }
    }();
    return LandmarkSymbol::of(lm);
}

template <typename Fn>
void for_each_word(std::string_view text, Fn&& fn) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\n' && text[j] != '\r') ++j;
        if (j > i) fn(text.substr(i, j - i));
        i = j;
    }
}

}  // namespace

std::string LandmarkSymbol::str() const {
    return {kind_letter(kind), polarity == Polarity::Plus ? '+' : '-'};
}

std::string BigramToken::surface() const {
    std::string s = "(" + first.str();
    if (second) s += second->str();
    s += ")";
    return s;
}

std::vector<BigramToken> merge_bigrams(std::span<const LandmarkSymbol> symbols) {
    std::vector<BigramToken> out;
    out.reserve((symbols.size() + 1) / 2);
    for (std::size_t i = 0; i < symbols.size(); i += 2) {
        BigramToken t{symbols[i], std::nullopt};
        if (i + 1 < symbols.size()) t.second = symbols[i + 1];
        out.push_back(t);
    }
    return out;
}

std::vector<BigramToken> merge_bigrams(const LandmarkSequence& seq) {
    std::vector<LandmarkSymbol> symbols;
    symbols.reserve(seq.landmarks.size());
    for (const auto& lm : seq.landmarks) symbols.push_back(LandmarkSymbol::of(lm));
    return merge_bigrams(symbols);
}

std::vector<LandmarkSymbol> parse_symbol_string(std::string_view text) {
    std::vector<LandmarkSymbol> out;
    for_each_word(text, [&](std::string_view word) {
        if (word.size() != 2) throw Error(Errc::UnknownToken, "unknown landmark '" + std::string(word) + "'");
        out.push_back(symbol_at(word, 0, word));
    });
    return out;
}

std::string render_token_string(std::span<const BigramToken> tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t.surface();
    }
    return out;
}

std::vector<BigramToken> parse_token_string(std::string_view text) {
    std::vector<BigramToken> out;
    for_each_word(text, [&](std::string_view word) {
        const bool framed = word.size() >= 2 && word.front() == '(' && word.back() == ')';
        const std::size_t inner = framed ? word.size() - 2 : 0;
        if (!framed || (inner != 2 && inner != 4)) {
            throw Error(Errc::UnknownToken, "unknown token '" + std::string(word) + "'");
        }
        BigramToken t{symbol_at(word, 1, word), std::nullopt};
        if (inner == 4) t.second = symbol_at(word, 3, word);
        out.push_back(t);
    });
    return out;
}

void Vocabulary::add(const std::string& surface, std::size_t count) {
    if (count == 0) return;
    auto [it, inserted] = counts_.try_emplace(surface, 0);
    if (inserted) tokens_.push_back(surface);
    it->second += count;
}

void Vocabulary::merge(const Vocabulary& other) {
    for (const auto& t : other.tokens_) add(t, other.count(t));
}

std::size_t Vocabulary::count(const std::string& surface) const {
    auto it = counts_.find(surface);
    return it == counts_.end() ? 0 : it->second;
}

void Vocabulary::write(std::ostream& out) const {
    for (const auto& t : tokens_) out << t << '\t' << counts_.at(t) << '\n';
}

Vocabulary build_vocabulary(std::span<const std::vector<BigramToken>> corpus) {
    Vocabulary v;
    for (const auto& tokens : corpus) {
        for (const auto& t : tokens) v.add(t);
    }
    return v;
}

}  // namespace lmtk
