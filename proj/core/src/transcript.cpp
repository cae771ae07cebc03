#include "lmtk/transcript.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "lmtk/csv.hpp"
#include "lmtk/error.hpp"

namespace lmtk {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = csv::trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_non_verbal(const std::string& text) {
    const std::string t = csv::trim(text);
    if (t.empty()) return true;
    return (t.front() == '<' && t.back() == '>') || (t.front() == '[' && t.back() == ']');
}

}  // namespace

std::string_view to_string(Speaker s) {
    return s == Speaker::Participant ? "Participant" : "Interviewer";
}

std::string_view to_string(Label l) {
    switch (l) {
        case Label::Depressed: return "depressed";
        case Label::Healthy: return "healthy";
        case Label::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

Dialogue parse_transcript(std::string_view text, std::string id,
                          std::vector<TranscriptWarning>* warnings) {
    const char delim = csv::sniff_delimiter(text);
    const auto rows = csv::parse(text, delim);
    if (rows.empty()) throw Error(Errc::MissingColumn, id + ": transcript has no header");

    const auto& header = rows.front();
    auto column = [&](std::string_view name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (lower(csv::trim(header[i])) == name) return i;
        }
        throw Error(Errc::MissingColumn, id + ": missing column '" + std::string(name) + "'");
    };
    const std::size_t c_start = column("start_time");
    const std::size_t c_stop = column("stop_time");
    const std::size_t c_speaker = column("speaker");
    const std::size_t c_value = column("value");
    const std::size_t width = std::max({c_start, c_stop, c_speaker, c_value}) + 1;

    Dialogue d;
    d.id = std::move(id);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = d.id + ": row " + std::to_string(r) + " (line " + std::to_string(r + 1) + ")";
        if (row.size() < width) {
            // A value column may legitimately be empty and get dropped by trailing-delimiter trimming.
            if (row.size() + 1 != width || c_value != width - 1) {
                throw Error(Errc::MissingColumn, where + ": expected " + std::to_string(width) + " fields");
            }
        }
        Utterance u;
        if (!parse_double(row[c_start], u.start_s) || !parse_double(row[c_stop], u.end_s)) {
            throw Error(Errc::UnparseableTimestamp, where + ": bad timestamp");
        }
        if (u.start_s < 0.0 || u.end_s <= u.start_s) {
            throw Error(Errc::UnparseableTimestamp,
                        where + ": stop_time " + row[c_stop] + " does not follow start_time " + row[c_start]);
        }
        const std::string who = lower(csv::trim(row[c_speaker]));
        if (who == "participant") {
            u.speaker = Speaker::Participant;
        } else if (who == "ellie" || who == "interviewer") {
            u.speaker = Speaker::Interviewer;
        } else {
            throw Error(Errc::UnknownSpeaker, where + ": speaker '" + row[c_speaker] + "'");
        }
        u.text = c_value < row.size() ? csv::trim(row[c_value]) : std::string{};
        u.non_verbal = is_non_verbal(u.text);
        d.utterances.push_back(std::move(u));
    }

    std::stable_sort(d.utterances.begin(), d.utterances.end(),
                     [](const Utterance& a, const Utterance& b) { return a.start_s < b.start_s; });

    for (std::size_t i = 1; i < d.utterances.size(); ++i) {
        if (d.utterances[i].start_s < d.utterances[i - 1].end_s) {
            TranscriptWarning w{i, "utterance " + std::to_string(i) + " overlaps its predecessor"};
            spdlog::warn("OverlapWarning: {}: {}", d.id, w.message);
            if (warnings) warnings->push_back(std::move(w));
        }
    }
    return d;
}

Dialogue read_transcript(const std::filesystem::path& path, std::vector<TranscriptWarning>* warnings) {
    return parse_transcript(slurp(path), dialogue_id_from_path(path), warnings);
}

std::string dialogue_id_from_path(const std::filesystem::path& path) {
    std::string stem = path.stem().string();
    constexpr std::string_view suffix = "_TRANSCRIPT";
    if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
    return stem;
}

std::map<std::string, Label> read_labels(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto rows = csv::parse(text, csv::sniff_delimiter(text));
    std::map<std::string, Label> out;
    if (rows.empty()) return out;

    std::size_t c_id = 0;
    std::size_t c_label = 1;
    std::size_t first = 0;
    const auto& head = rows.front();
    const bool has_header = head.size() >= 2 && csv::trim(head[1]) != "0" && csv::trim(head[1]) != "1";
    if (has_header) {
        first = 1;
        bool found_id = false;
        bool found_label = false;
        for (std::size_t i = 0; i < head.size(); ++i) {
            const std::string h = lower(csv::trim(head[i]));
            if (!found_id && (h == "id" || h == "participant_id")) {
                c_id = i;
                found_id = true;
            } else if (!found_label && (h == "label" || h == "phq8_binary" || h == "phq_binary")) {
                c_label = i;
                found_label = true;
            }
        }
        if (!found_id || !found_label) {
            throw Error(Errc::MissingColumn, path.string() + ": label file needs id and label columns");
        }
    }

    for (std::size_t r = first; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() <= std::max(c_id, c_label)) {
            throw Error(Errc::MissingColumn, path.string() + ": row " + std::to_string(r + 1));
        }
        const std::string v = csv::trim(row[c_label]);
        if (v != "0" && v != "1") {
            throw Error(Errc::Parse, path.string() + ": label must be 0 or 1, got '" + v + "'");
        }
        out[csv::trim(row[c_id])] = v == "1" ? Label::Depressed : Label::Healthy;
    }
    return out;
}

void apply_labels(std::vector<Dialogue>& dialogues, const std::map<std::string, Label>& labels) {
    for (auto& d : dialogues) {
        if (auto it = labels.find(d.id); it != labels.end()) d.label = it->second;
    }
}

std::string render_transcript(const Dialogue& d, std::size_t first, std::size_t last, TranscriptStyle style) {
    std::string out;
    for (std::size_t i = first; i <= last && i < d.utterances.size(); ++i) {
        const Utterance& u = d.utterances[i];
        if (u.non_verbal) continue;
        if (style == TranscriptStyle::ParticipantOnly && u.speaker != Speaker::Participant) continue;
        if (!out.empty()) out.push_back('\n');
        if (style == TranscriptStyle::SpeakerTagged) {
            out += to_string(u.speaker);
            out += ": ";
        }
        out += u.text;
    }
    return out;
}

}  // namespace lmtk
