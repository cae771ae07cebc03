#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <lmtk/tokens.hpp>

#include "common.hpp"

namespace lmtk::cli {

namespace {

struct TokenizeOptions {
    std::string in;
    std::string out;
    std::string vocab;
};

std::vector<LandmarkSymbol> symbols_of(const Json& line) {
    if (line.contains("landmarks") && line["landmarks"].is_array()) {
        std::vector<LandmarkSymbol> out;
        for (const auto& item : line["landmarks"]) {
            out.push_back(LandmarkSymbol::of(parse_landmark_symbol(item.at("lm").get<std::string>())));
        }
        return out;
    }
    return parse_symbol_string(line.at("token_string").get<std::string>());
}

int run_tokenize(const TokenizeOptions& opt) {
    const auto lines = read_jsonl(opt.in);
    std::vector<std::vector<BigramToken>> corpus;
    corpus.reserve(lines.size());
    std::string out;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const Json& line = lines[n];
        try {
            Json rec;
            rec["id"] = line.at("id").get<std::string>();
            auto tokens = merge_bigrams(symbols_of(line));
            rec["tokens"] = render_token_string(tokens);
            if (line.contains("utterances")) {
                Json utts = Json::array();
                for (const auto& u : line["utterances"]) {
                    const std::string lms = u.at("landmarks").get<std::string>();
                    utts.push_back(Json{{"index", u.at("index")},
                                        {"landmarks", lms},
                                        {"tokens", render_token_string(merge_bigrams(parse_symbol_string(lms)))}});
                }
                rec["utterances"] = std::move(utts);
            }
            out += rec.dump();
            out += '\n';
            corpus.push_back(std::move(tokens));
        } catch (const Json::exception& e) {
            throw Error(Errc::Parse, opt.in + ":" + std::to_string(n + 1) + ": " + e.what());
        }
    }
    const Vocabulary vocab = build_vocabulary(corpus);
    std::ostringstream v;
    vocab.write(v);
    write_text(opt.out, out);
    write_text(opt.vocab, v.str());
    spdlog::info("tokenize: {} sequences, {} distinct tokens", corpus.size(), vocab.size());
    return kOk;
}

}  // namespace

void add_tokenize(CLI::App& root, const GlobalOptions&, std::vector<Command>& out) {
    auto opt = std::make_shared<TokenizeOptions>();
    auto* app = root.add_subcommand("tokenize", "Merge landmark sequences into bigram tokens");
    app->add_option("--in", opt->in, "landmarks.jsonl from extract")->required();
    app->add_option("--out", opt->out, "Output tokens.jsonl")->required();
    app->add_option("--vocab", opt->vocab, "Output vocabulary file")->required();
    out.push_back({app, [opt] { return run_tokenize(*opt); }});
}

}  // namespace lmtk::cli
