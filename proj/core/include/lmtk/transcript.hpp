#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lmtk {

enum class Speaker { Participant, Interviewer };
enum class Label { Depressed, Healthy, Unlabeled };

std::string_view to_string(Speaker s);
std::string_view to_string(Label l);

struct Utterance {
    Speaker speaker = Speaker::Participant;
    std::string text;
    double start_s = 0.0;
    double end_s = 0.0;
    bool non_verbal = false;  // set when text is empty or a bracketed event like "<laughter>"
};

struct Dialogue {
    std::string id;
    std::vector<Utterance> utterances;  // sorted by start_s
    Label label = Label::Unlabeled;
};

struct TranscriptWarning {
    std::size_t row = 0;
    std::string message;
};

// Parses a CSV or TSV transcript with header start_time,stop_time,speaker,value
// (any column order; the delimiter is sniffed from the header). Rows whose
// stop precedes their start raise UnparseableTimestamp naming the data row.
// Overlapping utterances are accepted and reported through `warnings` (and
// the log).
Dialogue parse_transcript(std::string_view text, std::string id,
                          std::vector<TranscriptWarning>* warnings = nullptr);

Dialogue read_transcript(const std::filesystem::path& path,
                         std::vector<TranscriptWarning>* warnings = nullptr);

// "300_TRANSCRIPT.csv" -> "300"; otherwise the file stem.
std::string dialogue_id_from_path(const std::filesystem::path& path);

// Two-column `id,label` file; label 1 = depressed, 0 = healthy.
std::map<std::string, Label> read_labels(const std::filesystem::path& path);

// Applies labels by dialogue id; dialogues without an entry stay Unlabeled.
void apply_labels(std::vector<Dialogue>& dialogues, const std::map<std::string, Label>& labels);

enum class TranscriptStyle {
    ParticipantOnly,  // participant turns joined with '\n'
    SpeakerTagged,    // every turn as "Participant: ..." / "Interviewer: ..."
};

// Text of utterances[first..last] (inclusive). Non-verbal turns are skipped.
std::string render_transcript(const Dialogue& d, std::size_t first, std::size_t last,
                              TranscriptStyle style = TranscriptStyle::ParticipantOnly);

}  // namespace lmtk
