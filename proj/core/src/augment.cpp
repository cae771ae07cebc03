#include "lmtk/augment.hpp"

#include <algorithm>
#include <cmath>

#include "lmtk/error.hpp"
#include "lmtk/rng.hpp"

namespace lmtk {

void AugmentConfig::validate() const {
    if (!(eps_low > 0.0 && eps_low < eps_high && eps_high <= 1.0)) {
        throw Error(Errc::InvalidArgument, "need 0 < eps_low < eps_high <= 1");
    }
    if (m_plus == 0) throw Error(Errc::InvalidArgument, "m_plus must be > 0");
}

std::size_t compute_m_minus(std::size_t n_plus, std::size_t n_minus, std::size_t m_plus) {
    if (n_plus == 0 || n_minus == 0) {
        throw Error(Errc::ZeroClass, "both classes need at least one dialogue (n_plus=" + std::to_string(n_plus) +
                                         ", n_minus=" + std::to_string(n_minus) + ")");
    }
    const double ratio = static_cast<double>(m_plus) * static_cast<double>(n_plus) / static_cast<double>(n_minus);
    return static_cast<std::size_t>(std::llround(ratio));
}

std::vector<SubDialogue> sample_subdialogues(const Dialogue& dialogue, std::size_t count, const AugmentConfig& cfg) {
    const std::size_t T = dialogue.utterances.size();
    if (T < 2) throw Error(Errc::DialogueTooShort, dialogue.id + " has " + std::to_string(T) + " utterances");

    PortableRng rng(cfg.rng_seed, dialogue.id);
    std::vector<SubDialogue> out;
    out.reserve(count);
    const auto t = static_cast<double>(T);
    for (std::size_t m = 0; m < count; ++m) {
        const double eps = rng.uniform_open(cfg.eps_low, cfg.eps_high);
        const auto raw = static_cast<long long>(std::llround(eps * t - 1.0));
        const auto d = static_cast<std::size_t>(std::clamp<long long>(raw, 1, static_cast<long long>(T) - 1));
        const auto s = static_cast<std::size_t>(rng.uniform_below(T - d));
        out.push_back({dialogue.id, s, s + d, dialogue.label});
    }
    return out;
}

AugmentPlan plan_augmentation(std::span<const Dialogue> dialogues, const AugmentConfig& cfg) {
    cfg.validate();
    AugmentPlan plan;
    for (const auto& d : dialogues) {
        if (d.label == Label::Unlabeled) throw Error(Errc::UnlabeledDialogue, d.id);
        if (d.utterances.size() < 2) {
            throw Error(Errc::DialogueTooShort, d.id + " has " + std::to_string(d.utterances.size()) + " utterances");
        }
        (d.label == Label::Depressed ? plan.n_plus : plan.n_minus) += 1;
    }
    plan.m_plus = cfg.m_plus;
    plan.m_minus = compute_m_minus(plan.n_plus, plan.n_minus, cfg.m_plus);
    return plan;
}

std::vector<SubDialogue> shuffle_subdialogues(std::span<const Dialogue> dialogues, const AugmentConfig& cfg) {
    const AugmentPlan plan = plan_augmentation(dialogues, cfg);
    std::vector<SubDialogue> out;
    for (const auto& d : dialogues) {
        auto part = sample_subdialogues(d, plan.count_for(d.label), cfg);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace lmtk
