#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lmtk/transcript.hpp"

namespace lmtk {

struct AugmentConfig {
    std::size_t m_plus = 1000;  // sub-dialogues per positive (depressed) dialogue
    double eps_low = 0.5;
    double eps_high = 1.0;
    std::uint64_t rng_seed = 0;

    // 0 < eps_low < eps_high <= 1 and m_plus > 0, else Error{InvalidArgument}.
    void validate() const;
};

struct SubDialogue {
    std::string parent_id;
    std::size_t start_idx = 0;  // s
    std::size_t end_idx = 0;    // e, inclusive
    Label label = Label::Unlabeled;

    std::size_t length() const { return end_idx - start_idx + 1; }
};

// Sub-dialogues per negative (healthy) dialogue so both classes contribute
// about the same number of samples: round(m_plus * n_plus / n_minus).
// Throws Error{ZeroClass} when either class is empty.
std::size_t compute_m_minus(std::size_t n_plus, std::size_t n_minus, std::size_t m_plus);

// `count` slices of one dialogue. For each: eps ~ U(eps_low, eps_high),
// d = round(eps*T - 1) clamped to [1, T-1], s ~ U{0, ..., T-d-1}, e = s + d.
// Draws come from a stream keyed by (cfg.rng_seed, dialogue.id), so the
// result does not depend on which other dialogues are processed.
std::vector<SubDialogue> sample_subdialogues(const Dialogue& dialogue, std::size_t count,
                                             const AugmentConfig& cfg);

struct AugmentPlan {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t m_plus = 0;
    std::size_t m_minus = 0;

    std::size_t count_for(Label label) const { return label == Label::Depressed ? m_plus : m_minus; }
};

// Validates the corpus (labels present, T >= 2) and sizes both classes.
// Throws Error{UnlabeledDialogue, DialogueTooShort, ZeroClass}.
AugmentPlan plan_augmentation(std::span<const Dialogue> dialogues, const AugmentConfig& cfg);

// Full sub-dialogue shuffling over a labeled corpus, in dialogue order.
std::vector<SubDialogue> shuffle_subdialogues(std::span<const Dialogue> dialogues, const AugmentConfig& cfg);

}  // namespace lmtk
