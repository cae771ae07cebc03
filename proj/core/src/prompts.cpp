#include "lmtk/prompts.hpp"

#include <array>

#include "lmtk/error.hpp"

namespace lmtk {

namespace {

// Each template is head + slot A + mid + slot B + tail. Single-slot templates leave mid empty.
struct Layout {
    std::string_view head;
    std::string_view mid;
    std::string_view tail;
    bool has_transcript;
    bool has_landmarks;
};

constexpr std::string_view kHintTail =
    "Please try to predict the concatenated acoustic landmarks\n"
    "corresponding to these transcripts.\n\n### Transcript:\n";

const std::string kHintDepressedHead =
    std::string("Below are the speech transcripts from a person with depression.\n") + std::string(kHintTail);
const std::string kHintHealthyHead =
    std::string("Below are the speech transcripts from a healthy person.\n") + std::string(kHintTail);

Layout layout(TemplateKind kind) {
    switch (kind) {
        case TemplateKind::HintDepressed:
            return {kHintDepressedHead, "\n\n### Acoustic Landmark:\n", "", true, true};
        case TemplateKind::HintHealthy:
            return {kHintHealthyHead, "\n\n### Acoustic Landmark:\n", "", true, true};
        case TemplateKind::DetectText:
            return {"Categorize these dialogues as either depression or healthy based on its transcripts.\n\n"
                    "### transcript:",
                    "", "\n\n### Response:", true, false};
        case TemplateKind::DetectLandmark:
            return {"Categorize these dialogues as either depression or healthy based on its acoustic landmarks.\n\n"
                    "### acoustic landmarks:",
                    "", "\n\n### Response:", false, true};
        case TemplateKind::DetectMultimodal:
            return {"Categorize these dialogues as either depression or healthy based on its transcripts and "
                    "acoustic landmarks.\n\n### Transcript:",
                    "\n\n### Acoustic Landmark:", "\n\n### Response:\n", true, true};
    }
    throw Error(Errc::InvalidArgument, "bad template kind");
}

constexpr std::array<std::pair<TemplateKind, std::string_view>, 5> kKindNames{{
    {TemplateKind::HintDepressed, "hint_depressed"},
    {TemplateKind::HintHealthy, "hint_healthy"},
    {TemplateKind::DetectText, "detect_text"},
    {TemplateKind::DetectLandmark, "detect_landmark"},
    {TemplateKind::DetectMultimodal, "detect_multimodal"},
}};

TemplateKind detect_kind(DetectMode mode) {
    switch (mode) {
        case DetectMode::Text: return TemplateKind::DetectText;
        case DetectMode::Landmark: return TemplateKind::DetectLandmark;
        case DetectMode::Multimodal: return TemplateKind::DetectMultimodal;
    }
    throw Error(Errc::InvalidArgument, "bad detect mode");
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
    return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

}  // namespace

std::string_view to_string(TemplateKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

TemplateKind template_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    throw Error(Errc::InvalidArgument, "unknown template kind '" + std::string(name) + "'");
}

DetectMode detect_mode_from_string(std::string_view name) {
    if (name == "text") return DetectMode::Text;
    if (name == "landmark") return DetectMode::Landmark;
    if (name == "multimodal") return DetectMode::Multimodal;
    throw Error(Errc::InvalidArgument, "unknown detect mode '" + std::string(name) + "'");
}

std::string render_template(TemplateKind kind, std::string_view transcript, std::string_view landmarks) {
    const Layout l = layout(kind);
    std::string out(l.head);
    if (l.has_transcript) out += transcript;
    out += l.mid;
    if (l.has_landmarks) out += landmarks;
    out += l.tail;
    return out;
}

std::string_view answer_word(Label label) {
    switch (label) {
        case Label::Depressed: return "depression";
        case Label::Healthy: return "healthy";
        case Label::Unlabeled: break;
    }
    throw Error(Errc::UnlabeledDialogue, "no answer for an unlabeled dialogue");
}

std::string record_id(const SubDialogue& sub, std::size_t ordinal) {
    return sub.parent_id + "_" + std::to_string(sub.start_idx) + "_" + std::to_string(sub.end_idx) + "_" +
           std::to_string(ordinal);
}

PromptRecord emit_hint_record(const SubDialogue& sub, std::string_view transcript, std::string_view landmarks) {
    if (sub.label == Label::Unlabeled) throw Error(Errc::UnlabeledDialogue, sub.parent_id);
    PromptRecord r;
    r.kind = sub.label == Label::Depressed ? TemplateKind::HintDepressed : TemplateKind::HintHealthy;
    r.label = sub.label;
    r.prompt = render_template(r.kind, transcript, "");
    r.response = std::string(landmarks);
    return r;
}

PromptRecord emit_detect_record(const SubDialogue& sub, std::string_view transcript, std::string_view landmarks,
                                DetectMode mode, bool with_answer) {
    PromptRecord r;
    r.kind = detect_kind(mode);
    r.label = sub.label;
    r.prompt = render_template(r.kind, transcript, landmarks);
    if (with_answer) r.response = std::string(answer_word(sub.label));
    return r;
}

ParsedPrompt parse_prompt(TemplateKind kind, std::string_view rendered) {
    const Layout l = layout(kind);
    if (!starts_with(rendered, l.head) || !ends_with(rendered.substr(l.head.size()), l.tail)) {
        throw Error(Errc::Parse, "text does not match template " + std::string(to_string(kind)));
    }
    std::string_view body = rendered.substr(l.head.size(), rendered.size() - l.head.size() - l.tail.size());
    ParsedPrompt p;
    if (l.has_transcript && l.has_landmarks) {
        // Transcripts may contain the separator; landmarks never do.
        const auto at = body.rfind(l.mid);
        if (at == std::string_view::npos) {
            throw Error(Errc::Parse, "missing landmark section in " + std::string(to_string(kind)));
        }
        p.transcript = std::string(body.substr(0, at));
        p.landmarks = std::string(body.substr(at + l.mid.size()));
    } else if (l.has_transcript) {
        p.transcript = std::string(body);
    } else {
        p.landmarks = std::string(body);
    }
    return p;
}

}  // namespace lmtk
