#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <lmtk/analysis.hpp>
#include <lmtk/csv.hpp>
#include <lmtk/transcript.hpp>

#include "common.hpp"

namespace lmtk::cli {

namespace {

struct AnalyzeOptions {
    std::string matrices;
    std::size_t top = 10;
    std::size_t bottom = 10;
    std::string out;
};

struct ScoreOptions {
    std::string pred;
    std::string truth;
    std::string out;
    bool ensemble = false;
};

int run_analyze(const AnalyzeOptions& opt) {
    const auto dumps = load_matrix_manifest(opt.matrices);
    const auto ranking = rank_contributions(dumps, std::min(opt.top, dumps.size()), std::min(opt.bottom, dumps.size()));
    if (opt.top > dumps.size() || opt.bottom > dumps.size()) {
        spdlog::warn("analyze: only {} matrices available", dumps.size());
    }
    std::ostringstream csv;
    write_contributions_csv(csv, ranking.all);
    if (opt.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(opt.out, csv.str());
    }
    std::ostream& log = opt.out.empty() ? std::cerr : std::cout;
    log << "top " << ranking.top.size() << ":\n";
    for (const auto& r : ranking.top) log << "  " << r.rank << ' ' << r.layer_name << ' ' << r.score << '\n';
    log << "bottom " << ranking.bottom.size() << ":\n";
    for (const auto& r : ranking.bottom) log << "  " << r.rank << ' ' << r.layer_name << ' ' << r.score << '\n';
    return kOk;
}

std::string fmt_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int run_score(const ScoreOptions& opt) {
    const PredictionTable table = read_prediction_csv(opt.pred);
    std::vector<int> vote;
    if (opt.ensemble) vote = majority_vote(table.votes);

    std::vector<int> truth;
    if (!opt.truth.empty()) {
        const auto labels = read_labels(opt.truth);
        for (const auto& id : table.ids) {
            auto it = labels.find(id);
            if (it == labels.end()) throw Error(Errc::UnlabeledDialogue, "no truth label for '" + id + "'");
            truth.push_back(it->second == Label::Depressed ? 1 : 0);
        }
        for (std::size_t m = 0; m < table.model_names.size(); ++m) {
            std::cout << "f1 " << table.model_names[m] << ' ' << fmt_score(f1_score(table.votes[m], truth)) << '\n';
        }
        if (opt.ensemble) std::cout << "f1 vote " << fmt_score(f1_score(vote, truth)) << '\n';
    }

    if (!opt.out.empty()) {
        std::string out = "id";
        for (const auto& name : table.model_names) out += "," + csv::escape(name);
        if (opt.ensemble) out += ",vote";
        out += '\n';
        for (std::size_t i = 0; i < table.ids.size(); ++i) {
            out += csv::escape(table.ids[i]);
            for (const auto& v : table.votes) out += "," + std::to_string(v[i]);
            if (opt.ensemble) out += "," + std::to_string(vote[i]);
            out += '\n';
        }
        write_text(opt.out, out);
    }
    return kOk;
}

}  // namespace

void add_analyze(CLI::App& root, const GlobalOptions&, std::vector<Command>& out) {
    auto opt = std::make_shared<AnalyzeOptions>();
    auto* app = root.add_subcommand("analyze", "Rank adapter matrices by mean absolute entry");
    app->add_option("--matrices", opt->matrices, "Matrix manifest JSON")->required();
    app->add_option("--top", opt->top, "Highest-scoring layers to list")->capture_default_str();
    app->add_option("--bottom", opt->bottom, "Lowest-scoring layers to list")->capture_default_str();
    app->add_option("--out", opt->out, "contributions.csv (default: stdout)");
    out.push_back({app, [opt] { return run_analyze(*opt); }});
}

void add_score(CLI::App& root, const GlobalOptions&, std::vector<Command>& out) {
    auto opt = std::make_shared<ScoreOptions>();
    auto* app = root.add_subcommand("score", "Majority-vote predictions and report F1");
    app->add_option("--pred", opt->pred, "CSV: id,model_1,...,model_k")->required();
    app->add_option("--truth", opt->truth, "id,label file (1 = depressed)");
    app->add_option("--out", opt->out, "Write predictions with the vote column");
    app->add_flag("--ensemble", opt->ensemble, "Add a majority-vote column");
    out.push_back({app, [opt] { return run_score(*opt); }});
}

}  // namespace lmtk::cli
