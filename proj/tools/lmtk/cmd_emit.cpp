#include <map>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <lmtk/prompts.hpp>
#include <lmtk/rng.hpp>
#include <lmtk/tokens.hpp>

#include "common.hpp"

namespace lmtk::cli {

namespace {

struct EmitOptions {
    std::string subdialogues;
    std::string tokens;
    std::string templ = "detect";
    std::string mode = "multimodal";
    std::string out;
    bool answers = false;
};

Label label_from(const std::string& s) {
    if (s == "depressed") return Label::Depressed;
    if (s == "healthy") return Label::Healthy;
    return Label::Unlabeled;
}

// Landmark tokens for utterances [s, e]: per-utterance symbols concatenated, then merged.
std::string span_tokens(const Json& rec, std::size_t s, std::size_t e) {
    if (!rec.contains("utterances")) return rec.at("tokens").get<std::string>();
    std::vector<LandmarkSymbol> symbols;
    for (const auto& u : rec["utterances"]) {
        const auto idx = u.at("index").get<std::size_t>();
        if (idx < s || idx > e) continue;
        const auto part = parse_symbol_string(u.at("landmarks").get<std::string>());
        symbols.insert(symbols.end(), part.begin(), part.end());
    }
    return render_token_string(merge_bigrams(symbols));
}

int run_emit(const EmitOptions& opt, const GlobalOptions& g) {
    const bool hint = opt.templ == "hint";
    if (!hint && opt.templ != "detect") throw Error(Errc::InvalidArgument, "--template must be hint or detect");
    const DetectMode mode = detect_mode_from_string(opt.mode);
    const bool need_tokens = hint || mode != DetectMode::Text;
    if (need_tokens && opt.tokens.empty()) throw Error(Errc::InvalidArgument, "--tokens is required for this template");

    std::map<std::string, Json> by_id;
    if (!opt.tokens.empty()) {
        for (auto& rec : read_jsonl(opt.tokens)) by_id.emplace(rec.at("id").get<std::string>(), std::move(rec));
    }

    std::vector<PromptRecord> records;
    try {
        for (const auto& line : read_jsonl(opt.subdialogues)) {
            SubDialogue sub;
            sub.parent_id = line.at("parent_id").get<std::string>();
            sub.start_idx = line.at("start_idx").get<std::size_t>();
            sub.end_idx = line.at("end_idx").get<std::size_t>();
            sub.label = label_from(line.at("label").get<std::string>());
            const std::string transcript = line.at("transcript").get<std::string>();

            std::string landmarks;
            if (need_tokens) {
                auto it = by_id.find(sub.parent_id);
                if (it == by_id.end()) throw Error(Errc::Parse, "no tokens for dialogue '" + sub.parent_id + "'");
                landmarks = span_tokens(it->second, sub.start_idx, sub.end_idx);
            }
            PromptRecord r = hint ? emit_hint_record(sub, transcript, landmarks)
                                  : emit_detect_record(sub, transcript, landmarks, mode, opt.answers);
            r.id = line.at("id").get<std::string>();
            records.push_back(std::move(r));
        }
    } catch (const Json::exception& e) {
        throw Error(Errc::Parse, opt.subdialogues + ": " + e.what());
    }

    if (hint) {
        // Both labels in one file, order drawn from the run seed.
        PortableRng rng(g.seed, "emit-hint");
        for (std::size_t i = records.size(); i > 1; --i) {
            std::swap(records[i - 1], records[rng.uniform_below(i)]);
        }
    }

    std::string out;
    for (const auto& r : records) {
        Json j;
        j["id"] = r.id;
        j["kind"] = std::string(to_string(r.kind));
        j["prompt"] = r.prompt;
        j["response"] = r.response;
        j["label"] = std::string(to_string(r.label));
        out += j.dump();
        out += '\n';
    }
    write_text(opt.out, out);
    spdlog::info("emit: {} {} records", records.size(), opt.templ);
    return kOk;
}

}  // namespace

void add_emit(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out) {
    auto opt = std::make_shared<EmitOptions>();
    auto* app = root.add_subcommand("emit", "Render prompt records from sub-dialogues");
    app->add_option("--subdialogues", opt->subdialogues, "subdialogues.jsonl from augment")->required();
    app->add_option("--tokens", opt->tokens, "tokens.jsonl from tokenize");
    app->add_option("--template", opt->templ, "hint | detect")->capture_default_str();
    app->add_option("--mode", opt->mode, "Detect mode: text | landmark | multimodal")->capture_default_str();
    app->add_flag("--answers", opt->answers, "Fill detect responses with the label word");
    app->add_option("--out", opt->out, "Output records.jsonl")->required();
    out.push_back({app, [opt, &g] { return run_emit(*opt, g); }});
}

}  // namespace lmtk::cli
