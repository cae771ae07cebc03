#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmtk/audio.hpp"
#include "lmtk/band_energy.hpp"
#include "lmtk/transcript.hpp"

namespace lmtk {

// Declaration order is the tie-break order for landmarks sharing a time.
enum class LandmarkKind { G, B, S, V, P, F };
enum class Polarity { Plus, Minus };

inline constexpr std::array<LandmarkKind, 6> kAllKinds{
    LandmarkKind::G, LandmarkKind::B, LandmarkKind::S, LandmarkKind::V, LandmarkKind::P, LandmarkKind::F};

char kind_letter(LandmarkKind kind);
std::optional<LandmarkKind> kind_from_letter(char c);

struct Landmark {
    LandmarkKind kind = LandmarkKind::G;
    Polarity polarity = Polarity::Plus;
    double time_s = 0.0;
    double strength = 0.0;  // dB change that triggered the landmark

    // "g+", "b-", ...
    std::string symbol() const;

    bool operator==(const Landmark&) const = default;
};

// Parses "g+" / "p-". Throws Error{UnknownToken}.
Landmark parse_landmark_symbol(std::string_view symbol);

// Time order, then kind order g, b, s, v, p, f, then + before -.
bool landmark_less(const Landmark& a, const Landmark& b);

struct LandmarkSequence {
    std::vector<Landmark> landmarks;
    std::string source_id;
    double start_s = 0.0;
    double end_s = 0.0;

    // "g+ p- s+ ..."
    std::string symbol_string() const;
};

struct VoicedInterval {
    double start_s = 0.0;
    double end_s = 0.0;
};

struct VoicingSegments {
    std::vector<VoicedInterval> intervals;  // disjoint, sorted

    bool contains(double t) const;
};

struct DetectorConfig {
    FrameConfig frame;

    // Smoothing windows in frames (rounded up to odd) and differentiation
    // lags in milliseconds, for the coarse and fine passes.
    std::size_t coarse_smooth_frames = 20;
    std::size_t fine_smooth_frames = 10;
    double coarse_dt_ms = 50.0;
    double fine_dt_ms = 26.0;

    double coarse_threshold_db = 8.0;
    double fine_threshold_db = 5.0;
    double burst_threshold_db = 6.0;       // b and s, both passes
    double fv_threshold_db = 6.0;          // high-band change for f and v, both passes
    double fv_low_band_min_change_db = 3.0;  // opposite move required of bands 2 and 3
    std::size_t burst_min_bands = 3;       // of bands 2-6
    std::size_t fv_min_high_bands = 3;     // of bands 4-6

    double coincidence_window_ms = 20.0;
    double peak_min_distance_ms = 20.0;

    // Periodicity detector: frame length and hop in samples at 16 kHz, and
    // the binarization threshold on the frame's normalized autocorrelation
    // energy E_f / R(0)^2.
    std::size_t p_frame_len = 320;
    std::size_t p_hop = 80;
    double p_binarize_theta = 0.25;

    // Throws Error{InvalidArgument} on nonsensical settings.
    void validate() const;
};

// Smoothed/differentiated views of a band-energy track for both passes.
struct BandDynamics {
    BandEnergyTrack track;
    std::array<DerivativeTrack, kNumBands> coarse;
    std::array<DerivativeTrack, kNumBands> fine;

    std::size_t window_frames = 0;    // coincidence window
    std::size_t distance_frames = 0;  // peak min distance
};

BandDynamics analyze_dynamics(BandEnergyTrack track, const DetectorConfig& cfg);

// Glottal candidates from band 1: a fine-pass derivative peak >= fine
// threshold confirmed by a coarse-pass peak >= coarse threshold within the
// coincidence window. Negative polarity uses the negated derivatives.
// Strength is the fine-pass peak height.
std::vector<Landmark> detect_g(const BandDynamics& dyn, const DetectorConfig& cfg);

struct GlottalPairing {
    std::vector<Landmark> landmarks;  // alternating g+, g-, ... ending in g-
    VoicingSegments segments;
};

// Selects the alternating g+/g- subsequence that maximizes the number of
// pairs, then the summed strength. Input must be time-sorted.
GlottalPairing pair_g(std::span<const Landmark> candidates);

// Bursts: >= burst_min_bands of bands 2-6 move together by >= burst threshold
// in both passes, outside voiced segments. Events whose spectral pattern is a
// frication edge (bands 2 and 3 moving the opposite way) are left to detect_f_v.
std::vector<Landmark> detect_b(const BandDynamics& dyn, const VoicingSegments& voiced,
                               const DetectorConfig& cfg);

// Same multi-band test as detect_b, inside voiced segments.
std::vector<Landmark> detect_s(const BandDynamics& dyn, const VoicingSegments& voiced,
                               const DetectorConfig& cfg);

// Frication edges: high bands 4-6 rise (fall) by >= fv threshold while bands 2
// and 3 both fall (rise). f outside voiced segments, v inside.
std::vector<Landmark> detect_f_v(const BandDynamics& dyn, const VoicingSegments& voiced,
                                 const DetectorConfig& cfg);

// Framewise autocorrelation energy, held back up to the sample rate,
// smoothed with the fine window, binarized; p+ / p- at the 0->1 / 1->0 jumps.
// The binary signal is taken as 0 outside the audio, so p+ and p- interleave.
std::vector<Landmark> detect_p(const AudioBuffer& audio, const DetectorConfig& cfg);

// Per-frame normalized autocorrelation energy used by detect_p (exposed for
// inspection and tests).
std::vector<double> periodicity_energy(std::span<const double> samples, std::size_t frame_len,
                                       std::size_t hop);

// Full pipeline. `audio` must be at a rate of at least 16 kHz.
LandmarkSequence extract_landmarks(const AudioBuffer& audio, const DetectorConfig& cfg,
                                   std::string source_id = {});

// Runs extraction on each participant utterance span of `dialogue`, with
// landmark times relative to the start of the recording. Entry i corresponds
// to dialogue.utterances[i]; interviewer turns (and spans that are too short
// to analyse) yield empty sequences.
std::vector<LandmarkSequence> extract_participant_landmarks(const AudioBuffer& audio,
                                                            const Dialogue& dialogue,
                                                            const DetectorConfig& cfg);

}  // namespace lmtk
