#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <lmtk/augment.hpp>
#include <lmtk/transcript.hpp>

#include "common.hpp"

namespace lmtk::cli {

namespace {

struct AugmentOptions {
    std::string dialogues;
    std::string labels;
    std::string out;
    std::string manifest;
    std::string style = "participant";
    bool skip_unlabeled = false;
    AugmentConfig cfg;
};

TranscriptStyle parse_style(const std::string& s) {
    if (s == "participant") return TranscriptStyle::ParticipantOnly;
    if (s == "tagged") return TranscriptStyle::SpeakerTagged;
    throw Error(Errc::InvalidArgument, "unknown transcript style '" + s + "'");
}

int run_augment(AugmentOptions opt, const GlobalOptions& g) {
    opt.cfg.rng_seed = g.seed;
    opt.cfg.validate();
    const TranscriptStyle style = parse_style(opt.style);

    std::vector<Dialogue> dialogues;
    for (const auto& path : list_inputs(opt.dialogues, {".csv", ".tsv"})) dialogues.push_back(read_transcript(path));
    apply_labels(dialogues, read_labels(opt.labels));
    if (opt.skip_unlabeled) {
        const auto before = dialogues.size();
        std::erase_if(dialogues, [](const Dialogue& d) { return d.label == Label::Unlabeled; });
        if (before != dialogues.size()) spdlog::info("augment: skipped {} unlabeled dialogues", before - dialogues.size());
    }

    const AugmentPlan plan = plan_augmentation(dialogues, opt.cfg);
    auto results = parallel_map<std::string>(dialogues.size(), g.jobs, [&](std::size_t i) {
        const Dialogue& d = dialogues[i];
        std::string chunk;
        std::size_t k = 0;
        for (const auto& sub : sample_subdialogues(d, plan.count_for(d.label), opt.cfg)) {
            Json rec;
            rec["id"] = d.id + "_" + std::to_string(k++);
            rec["parent_id"] = sub.parent_id;
            rec["start_idx"] = sub.start_idx;
            rec["end_idx"] = sub.end_idx;
            rec["label"] = std::string(to_string(sub.label));
            rec["transcript"] = render_transcript(d, sub.start_idx, sub.end_idx, style);
            chunk += rec.dump();
            chunk += '\n';
        }
        return chunk;
    });

    std::string out;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].error) return report("augment " + dialogues[i].id, results[i].error);
        out += *results[i].value;
    }

    Json manifest;
    manifest["seed"] = g.seed;
    manifest["m_plus"] = plan.m_plus;
    manifest["m_minus"] = plan.m_minus;
    manifest["n_plus"] = plan.n_plus;
    manifest["n_minus"] = plan.n_minus;
    manifest["eps_low"] = opt.cfg.eps_low;
    manifest["eps_high"] = opt.cfg.eps_high;
    manifest["transcript_style"] = opt.style;
    manifest["subdialogues"] = plan.n_plus * plan.m_plus + plan.n_minus * plan.m_minus;
    write_text(opt.out, out);
    write_text(opt.manifest.empty() ? opt.out + ".manifest.json" : opt.manifest, manifest.dump(2) + "\n");
    spdlog::info("augment: {} depressed x {} + {} healthy x {}", plan.n_plus, plan.m_plus, plan.n_minus,
                 plan.m_minus);
    return kOk;
}

}  // namespace

void add_augment(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out) {
    auto opt = std::make_shared<AugmentOptions>();
    auto* app = root.add_subcommand("augment", "Sample balanced sub-dialogues from labeled transcripts");
    app->add_option("--dialogues", opt->dialogues, "Transcript file or directory")->required();
    app->add_option("--labels", opt->labels, "id,label file (1 = depressed)")->required();
    app->add_option("--out", opt->out, "Output subdialogues.jsonl")->required();
    app->add_option("--manifest", opt->manifest, "Manifest path (default: <out>.manifest.json)");
    app->add_option("--m-plus", opt->cfg.m_plus, "Sub-dialogues per depressed dialogue")->capture_default_str();
    app->add_option("--eps-low", opt->cfg.eps_low, "Lower length fraction")->capture_default_str();
    app->add_option("--eps-high", opt->cfg.eps_high, "Upper length fraction")->capture_default_str();
    app->add_option("--style", opt->style, "Transcript text: participant | tagged")->capture_default_str();
    app->add_flag("--skip-unlabeled", opt->skip_unlabeled, "Drop dialogues missing from the label file");
    out.push_back({app, [opt, &g] { return run_augment(*opt, g); }});
}

}  // namespace lmtk::cli
