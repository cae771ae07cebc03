#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <lmtk/audio.hpp>
#include <lmtk/landmarks.hpp>
#include <lmtk/transcript.hpp>

#include "common.hpp"

namespace lmtk::cli {

namespace {

struct ExtractOptions {
    std::string audio;
    std::string out;
    std::string transcripts;
    bool keep_going = false;
    DetectorConfig detector;
};

std::string audio_id(const std::filesystem::path& p) {
    std::string stem = p.stem().string();
    constexpr std::string_view suffix = "_AUDIO";
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
    return stem;
}

std::filesystem::path find_transcript(const std::filesystem::path& dir, const std::string& id) {
    for (const char* pattern : {"_TRANSCRIPT.csv", "_TRANSCRIPT.tsv", ".csv", ".tsv"}) {
        auto p = dir / (id + pattern);
        if (std::filesystem::is_regular_file(p)) return p;
    }
    throw Error(Errc::Io, "no transcript for '" + id + "' in " + dir.string());
}

Json landmark_array(const std::vector<Landmark>& lms) {
    Json arr = Json::array();
    for (const auto& l : lms) arr.push_back(Json{{"t", l.time_s}, {"lm", l.symbol()}});
    return arr;
}

Json extract_one(const std::filesystem::path& path, const ExtractOptions& opt) {
    const std::string id = audio_id(path);
    AudioBuffer audio = read_wav(path);
    if (audio.sample_rate != kCanonicalRate) audio = resample(audio, kCanonicalRate);

    Json line;
    line["id"] = id;
    if (opt.transcripts.empty()) {
        const auto seq = extract_landmarks(audio, opt.detector, id);
        line["landmarks"] = landmark_array(seq.landmarks);
        line["token_string"] = seq.symbol_string();
        return line;
    }

    const Dialogue dialogue = read_transcript(find_transcript(opt.transcripts, id));
    const auto per_utt = extract_participant_landmarks(audio, dialogue, opt.detector);
    LandmarkSequence all;
    Json utterances = Json::array();
    for (std::size_t i = 0; i < per_utt.size(); ++i) {
        if (dialogue.utterances[i].speaker != Speaker::Participant) continue;
        const auto& seq = per_utt[i];
        all.landmarks.insert(all.landmarks.end(), seq.landmarks.begin(), seq.landmarks.end());
        utterances.push_back(Json{{"index", i},
                                  {"start", dialogue.utterances[i].start_s},
                                  {"end", dialogue.utterances[i].end_s},
                                  {"landmarks", seq.symbol_string()}});
    }
    line["landmarks"] = landmark_array(all.landmarks);
    line["token_string"] = all.symbol_string();
    line["utterances"] = std::move(utterances);
    return line;
}

int run_extract(const ExtractOptions& opt, const GlobalOptions& g) {
    opt.detector.validate();
    const auto files = list_inputs(opt.audio, {".wav"});
    if (files.empty()) spdlog::warn("extract: no .wav files under {}", opt.audio);

    auto results = parallel_map<Json>(files.size(), g.jobs, [&](std::size_t i) { return extract_one(files[i], opt); });

    std::string out;
    int status = kOk;
    std::size_t written = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (results[i].error) {
            status = std::max(status, report("extract " + files[i].string(), results[i].error));
            continue;
        }
        out += results[i].value->dump();
        out += '\n';
        ++written;
    }
    if (status != kOk && !opt.keep_going) return status;
    write_text(opt.out, out);
    spdlog::info("extract: wrote {} of {} files to {}", written, files.size(), opt.out);
    return opt.keep_going ? kOk : status;
}

}  // namespace

void add_extract(CLI::App& root, const GlobalOptions& g, std::vector<Command>& out) {
    auto opt = std::make_shared<ExtractOptions>();
    auto* app = root.add_subcommand("extract", "Detect acoustic landmarks in WAV files");
    app->add_option("--audio", opt->audio, "WAV file or directory")->required();
    app->add_option("--out", opt->out, "Output JSONL")->required();
    app->add_option("--transcripts", opt->transcripts, "Transcript directory; restricts detection to participant turns");
    app->add_flag("--keep-going", opt->keep_going, "Report and skip files that fail");
    auto& d = opt->detector;
    app->add_option("--coarse-threshold", d.coarse_threshold_db, "Coarse-pass peak threshold (dB)")->capture_default_str();
    app->add_option("--fine-threshold", d.fine_threshold_db, "Fine-pass peak threshold (dB)")->capture_default_str();
    app->add_option("--burst-threshold", d.burst_threshold_db, "b/s per-band threshold (dB)")->capture_default_str();
    app->add_option("--fv-threshold", d.fv_threshold_db, "f/v high-band threshold (dB)")->capture_default_str();
    app->add_option("--fv-low-change", d.fv_low_band_min_change_db, "f/v opposite low-band change (dB)")
        ->capture_default_str();
    app->add_option("--coincidence-ms", d.coincidence_window_ms, "Coincidence window (ms)")->capture_default_str();
    app->add_option("--p-theta", d.p_binarize_theta, "Periodicity threshold")->capture_default_str();
    out.push_back({app, [opt, &g] { return run_extract(*opt, g); }});
}

}  // namespace lmtk::cli
