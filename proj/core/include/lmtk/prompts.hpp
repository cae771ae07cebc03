#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lmtk/augment.hpp"
#include "lmtk/transcript.hpp"

namespace lmtk {

enum class TemplateKind { HintDepressed, HintHealthy, DetectText, DetectLandmark, DetectMultimodal };
enum class DetectMode { Text, Landmark, Multimodal };

std::string_view to_string(TemplateKind kind);
TemplateKind template_kind_from_string(std::string_view name);  // throws Error{InvalidArgument}
DetectMode detect_mode_from_string(std::string_view name);      // "text" | "landmark" | "multimodal"

struct PromptRecord {
    std::string id;
    TemplateKind kind = TemplateKind::DetectText;
    Label label = Label::Unlabeled;
    std::string prompt;
    std::string response;  // landmarks for hint records, class word for training detect records

    // Exact template text with both slots filled.
    std::string rendered() const { return prompt + response; }
};

// Fills the template for `kind`. Slot values are inserted verbatim and never rescanned.
std::string render_template(TemplateKind kind, std::string_view transcript, std::string_view landmarks);

// Cross-modal hint record. The template follows the sub-dialogue label.
// Throws Error{UnlabeledDialogue} when it has none.
PromptRecord emit_hint_record(const SubDialogue& sub, std::string_view transcript, std::string_view landmarks);

// Detection record. With `with_answer`, response is "depression" or "healthy".
PromptRecord emit_detect_record(const SubDialogue& sub, std::string_view transcript, std::string_view landmarks,
                                DetectMode mode, bool with_answer);

std::string_view answer_word(Label label);

std::string record_id(const SubDialogue& sub, std::size_t ordinal);

struct ParsedPrompt {
    std::optional<std::string> transcript;
    std::optional<std::string> landmarks;
};

// Recovers slot values from rendered template text. Throws Error{Parse} on mismatch.
ParsedPrompt parse_prompt(TemplateKind kind, std::string_view rendered);

}  // namespace lmtk
