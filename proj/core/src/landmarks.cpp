#include "lmtk/landmarks.hpp"

#include <algorithm>
#include <cmath>

#include <fftw3.h>

#include "fftw_lock.hpp"
#include "lmtk/error.hpp"
#include "lmtk/peaks.hpp"

namespace lmtk {

namespace {

std::size_t ms_to_frames(double ms, const BandEnergyTrack& track) {
    return static_cast<std::size_t>(std::lround(ms * 1e-3 * track.frame_rate));
}

struct Score {
    int pairs = 0;
    double strength = 0.0;

    bool better_than(const Score& o) const {
        return pairs > o.pairs || (pairs == o.pairs && strength > o.strength);
    }
};

// A confirmed single-band change: fine-pass peak backed by a coarse-pass peak.
struct BandEvent {
    std::size_t frame = 0;
    std::size_t band = 0;  // 0-based
    double height = 0.0;   // fine-pass peak height
};

std::vector<double> signed_values(const DerivativeTrack& d, Polarity pol) {
    std::vector<double> v = d.values;
    if (pol == Polarity::Minus) {
        for (double& x : v) x = -x;
    }
    return v;
}

std::vector<BandEvent> band_events(const BandDynamics& dyn, std::size_t band, Polarity pol,
                                   double coarse_threshold, double fine_threshold) {
    const auto fine = signed_values(dyn.fine[band], pol);
    const auto coarse = signed_values(dyn.coarse[band], pol);
    const auto fine_peaks = detect_peaks(fine, {fine_threshold, fine_threshold, dyn.distance_frames});
    const auto coarse_peaks = detect_peaks(coarse, {coarse_threshold, coarse_threshold, dyn.distance_frames});

    std::vector<BandEvent> out;
    for (const Peak& p : fine_peaks) {
        const bool confirmed = std::any_of(coarse_peaks.begin(), coarse_peaks.end(), [&](const Peak& c) {
            const std::size_t gap = c.index > p.index ? c.index - p.index : p.index - c.index;
            return gap <= dyn.window_frames;
        });
        if (confirmed) out.push_back({p.index, band, p.height});
    }
    return out;
}

struct MultiBandEvent {
    std::size_t frame = 0;
    double strength = 0.0;
};

// Groups band events whose frames fit inside a span of 2*window (i.e. all
// within `window` of a common anchor) and keeps groups covering at least
// `min_bands` distinct bands. Each band contributes its strongest event; the
// group is placed at the mean of those frames.
std::vector<MultiBandEvent> coincident_events(std::vector<BandEvent> events, std::size_t window,
                                              std::size_t min_bands) {
    std::sort(events.begin(), events.end(), [](const BandEvent& a, const BandEvent& b) {
        return a.frame != b.frame ? a.frame < b.frame : a.band < b.band;
    });
    std::vector<MultiBandEvent> out;
    std::size_t i = 0;
    while (i < events.size()) {
        const std::size_t limit = events[i].frame + 2 * window;
        std::size_t j = i;
        std::array<const BandEvent*, kNumBands> best{};
        while (j < events.size() && events[j].frame <= limit) {
            const BandEvent& e = events[j];
            if (best[e.band] == nullptr || e.height > best[e.band]->height) best[e.band] = &e;
            ++j;
        }
        std::size_t count = 0;
        double frame_sum = 0.0;
        double strength_sum = 0.0;
        for (const BandEvent* e : best) {
            if (e == nullptr) continue;
            ++count;
            frame_sum += static_cast<double>(e->frame);
            strength_sum += e->height;
        }
        if (count >= min_bands) {
            out.push_back({static_cast<std::size_t>(std::lround(frame_sum / static_cast<double>(count))),
                           strength_sum / static_cast<double>(count)});
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

// Bands 2 and 3 both move against `pol` (by more than the configured amount)
// in both passes at `frame`.
bool low_bands_oppose(const BandDynamics& dyn, std::size_t frame, Polarity pol, double min_change) {
    const double sign = pol == Polarity::Plus ? 1.0 : -1.0;
    for (std::size_t band : {std::size_t{1}, std::size_t{2}}) {
        const double c = sign * dyn.coarse[band].values[frame];
        const double f = sign * dyn.fine[band].values[frame];
        if (!(c < -min_change && f < -min_change)) return false;
    }
    return true;
}

std::vector<MultiBandEvent> burst_events(const BandDynamics& dyn, Polarity pol, const DetectorConfig& cfg) {
    std::vector<BandEvent> events;
    for (std::size_t band = 1; band < kNumBands; ++band) {
        auto e = band_events(dyn, band, pol, cfg.burst_threshold_db, cfg.burst_threshold_db);
        events.insert(events.end(), e.begin(), e.end());
    }
    auto grouped = coincident_events(std::move(events), dyn.window_frames, cfg.burst_min_bands);
    std::erase_if(grouped, [&](const MultiBandEvent& e) {
        return low_bands_oppose(dyn, e.frame, pol, cfg.fv_low_band_min_change_db);
    });
    return grouped;
}

std::vector<Landmark> gated_bursts(const BandDynamics& dyn, const VoicingSegments& voiced,
                                   const DetectorConfig& cfg, bool want_voiced, LandmarkKind kind) {
    std::vector<Landmark> out;
    for (Polarity pol : {Polarity::Plus, Polarity::Minus}) {
        for (const auto& e : burst_events(dyn, pol, cfg)) {
            const double t = dyn.track.frame_time(static_cast<double>(e.frame));
            if (voiced.contains(t) == want_voiced) out.push_back({kind, pol, t, e.strength});
        }
    }
    std::sort(out.begin(), out.end(), landmark_less);
    return out;
}

}  // namespace

char kind_letter(LandmarkKind kind) {
    switch (kind) {
        case LandmarkKind::G: return 'g';
        case LandmarkKind::B: return 'b';
        case LandmarkKind::S: return 's';
        case LandmarkKind::V: return 'v';
        case LandmarkKind::P: return 'p';
        case LandmarkKind::F: return 'f';
    }
    return '?';
}

std::optional<LandmarkKind> kind_from_letter(char c) {
    for (LandmarkKind k : kAllKinds) {
        if (kind_letter(k) == c) return k;
    }
    return std::nullopt;
}

std::string Landmark::symbol() const {
    return {kind_letter(kind), polarity == Polarity::Plus ? '+' : '-'};
}

Landmark parse_landmark_symbol(std::string_view symbol) {
    if (symbol.size() == 2 && (symbol[1] == '+' || symbol[1] == '-')) {
        if (auto kind = kind_from_letter(symbol[0])) {
            return {*kind, symbol[1] == '+' ? Polarity::Plus : Polarity::Minus, 0.0, 0.0};
        }
    }
    throw Error(Errc::UnknownToken, "unknown landmark symbol '" + std::string(symbol) + "'");
}

bool landmark_less(const Landmark& a, const Landmark& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.polarity < b.polarity;
}

std::string LandmarkSequence::symbol_string() const {
    std::string out;
    for (const auto& lm : landmarks) {
        if (!out.empty()) out.push_back(' ');
        out += lm.symbol();
    }
    return out;
}

bool VoicingSegments::contains(double t) const {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), t,
                               [](double v, const VoicedInterval& iv) { return v < iv.start_s; });
    if (it == intervals.begin()) return false;
    --it;
    return t <= it->end_s;
}

void DetectorConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw Error(Errc::InvalidArgument, std::string(name) + " must be > 0");
    };
    positive(coarse_threshold_db, "coarse_threshold_db");
    positive(fine_threshold_db, "fine_threshold_db");
    positive(burst_threshold_db, "burst_threshold_db");
    positive(fv_threshold_db, "fv_threshold_db");
    positive(coincidence_window_ms, "coincidence_window_ms");
    positive(coarse_dt_ms, "coarse_dt_ms");
    positive(fine_dt_ms, "fine_dt_ms");
    positive(p_binarize_theta, "p_binarize_theta");
    if (fv_low_band_min_change_db < 0.0) throw Error(Errc::InvalidArgument, "fv_low_band_min_change_db must be >= 0");
    if (peak_min_distance_ms < 0.0) throw Error(Errc::InvalidArgument, "peak_min_distance_ms must be >= 0");
    if (burst_min_bands == 0 || burst_min_bands > 5) throw Error(Errc::InvalidArgument, "burst_min_bands must be in 1..5");
    if (fv_min_high_bands == 0 || fv_min_high_bands > 3) throw Error(Errc::InvalidArgument, "fv_min_high_bands must be in 1..3");
    if (p_frame_len < 2 || p_hop == 0 || p_hop > p_frame_len) throw Error(Errc::InvalidArgument, "p frame needs 0 < hop <= frame_len");
    if (frame.hop == 0 || frame.hop > frame.frame_len) throw Error(Errc::InvalidArgument, "frame needs 0 < hop <= frame_len");
}

BandDynamics analyze_dynamics(BandEnergyTrack track, const DetectorConfig& cfg) {
    BandDynamics dyn;
    const std::size_t coarse_sm = round_up_odd(cfg.coarse_smooth_frames);
    const std::size_t fine_sm = round_up_odd(cfg.fine_smooth_frames);
    const std::size_t coarse_dt = std::max<std::size_t>(1, ms_to_frames(cfg.coarse_dt_ms, track));
    const std::size_t fine_dt = std::max<std::size_t>(1, ms_to_frames(cfg.fine_dt_ms, track));
    for (std::size_t b = 0; b < kNumBands; ++b) {
        dyn.coarse[b] = differentiate(smooth(track.bands[b], coarse_sm, Pass::Coarse), coarse_dt);
        dyn.fine[b] = differentiate(smooth(track.bands[b], fine_sm, Pass::Fine), fine_dt);
    }
    dyn.window_frames = ms_to_frames(cfg.coincidence_window_ms, track);
    dyn.distance_frames = ms_to_frames(cfg.peak_min_distance_ms, track);
    dyn.track = std::move(track);
    return dyn;
}

std::vector<Landmark> detect_g(const BandDynamics& dyn, const DetectorConfig& cfg) {
    std::vector<Landmark> out;
    for (Polarity pol : {Polarity::Plus, Polarity::Minus}) {
        for (const BandEvent& e : band_events(dyn, 0, pol, cfg.coarse_threshold_db, cfg.fine_threshold_db)) {
            out.push_back({LandmarkKind::G, pol, dyn.track.frame_time(static_cast<double>(e.frame)), e.height});
        }
    }
    std::sort(out.begin(), out.end(), landmark_less);
    return out;
}

GlottalPairing pair_g(std::span<const Landmark> cand) {
    const std::size_t m = cand.size();
    // open[i]: best alternating prefix ending with the g+ at i;
    // closed[i]: best ending with the g- at i. prev[i] is the predecessor.
    constexpr std::size_t kStart = static_cast<std::size_t>(-1);
    std::vector<Score> score(m);
    std::vector<std::size_t> prev(m, kStart);

    Score best_closed{};  // the empty selection
    std::size_t best_closed_at = kStart;
    bool have_open = false;
    Score best_open{};
    std::size_t best_open_at = kStart;

    for (std::size_t i = 0; i < m; ++i) {
        if (cand[i].kind != LandmarkKind::G) continue;
        if (cand[i].polarity == Polarity::Plus) {
            score[i] = {best_closed.pairs, best_closed.strength + cand[i].strength};
            prev[i] = best_closed_at;
        } else {
            if (!have_open) continue;
            score[i] = {best_open.pairs + 1, best_open.strength + cand[i].strength};
            prev[i] = best_open_at;
        }
        // Update the running bests only after computing score[i] so a
        // candidate never follows itself. Strict comparison keeps the earliest.
        if (cand[i].polarity == Polarity::Plus) {
            if (!have_open || score[i].better_than(best_open)) {
                best_open = score[i];
                best_open_at = i;
                have_open = true;
            }
        } else if (score[i].better_than(best_closed)) {
            best_closed = score[i];
            best_closed_at = i;
        }
    }

    GlottalPairing out;
    for (std::size_t i = best_closed_at; i != kStart; i = prev[i]) out.landmarks.push_back(cand[i]);
    std::reverse(out.landmarks.begin(), out.landmarks.end());
    for (std::size_t k = 0; k + 1 < out.landmarks.size(); k += 2) {
        out.segments.intervals.push_back({out.landmarks[k].time_s, out.landmarks[k + 1].time_s});
    }
    return out;
}

std::vector<Landmark> detect_b(const BandDynamics& dyn, const VoicingSegments& voiced, const DetectorConfig& cfg) {
    return gated_bursts(dyn, voiced, cfg, false, LandmarkKind::B);
}

std::vector<Landmark> detect_s(const BandDynamics& dyn, const VoicingSegments& voiced, const DetectorConfig& cfg) {
    return gated_bursts(dyn, voiced, cfg, true, LandmarkKind::S);
}

std::vector<Landmark> detect_f_v(const BandDynamics& dyn, const VoicingSegments& voiced, const DetectorConfig& cfg) {
    std::vector<Landmark> out;
    for (Polarity pol : {Polarity::Plus, Polarity::Minus}) {
        std::vector<BandEvent> events;
        for (std::size_t band = 3; band < kNumBands; ++band) {
            auto e = band_events(dyn, band, pol, cfg.fv_threshold_db, cfg.fv_threshold_db);
            events.insert(events.end(), e.begin(), e.end());
        }
        for (const auto& e : coincident_events(std::move(events), dyn.window_frames, cfg.fv_min_high_bands)) {
            if (!low_bands_oppose(dyn, e.frame, pol, cfg.fv_low_band_min_change_db)) continue;
            const double t = dyn.track.frame_time(static_cast<double>(e.frame));
            const LandmarkKind kind = voiced.contains(t) ? LandmarkKind::V : LandmarkKind::F;
            out.push_back({kind, pol, t, e.strength});
        }
    }
    std::sort(out.begin(), out.end(), landmark_less);
    return out;
}

std::vector<double> periodicity_energy(std::span<const double> samples, std::size_t frame_len, std::size_t hop) {
    if (samples.size() < frame_len) throw Error(Errc::AudioTooShort, "audio shorter than one periodicity frame");
    const std::size_t n_frames = 1 + (samples.size() - frame_len) / hop;
    // Linear autocorrelation through a zero-padded FFT.
    std::size_t n_fft = 1;
    while (n_fft < 2 * frame_len) n_fft *= 2;
    const std::size_t n_bins = n_fft / 2 + 1;

    double* buf = fftw_alloc_real(n_fft);
    fftw_complex* spec = fftw_alloc_complex(n_bins);
    fftw_plan fwd;
    fftw_plan inv;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), buf, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n_fft), spec, buf, FFTW_ESTIMATE);
    }

    std::vector<double> energy(n_frames);
    const double n = static_cast<double>(frame_len);
    for (std::size_t i = 0; i < n_frames; ++i) {
        const double* frame = samples.data() + i * hop;
        std::copy(frame, frame + frame_len, buf);
        std::fill(buf + frame_len, buf + n_fft, 0.0);
        fftw_execute(fwd);
        for (std::size_t k = 0; k < n_bins; ++k) {
            spec[k][0] = spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1];
            spec[k][1] = 0.0;
        }
        fftw_execute(inv);
        // buf[k] / n_fft = sum_{j} y[j] y[j+k]; R(k) carries the 1/(N-k) normalization.
        double acc = 0.0;
        double r0 = 0.0;
        for (std::size_t k = 0; k < frame_len; ++k) {
            const double r = buf[k] / static_cast<double>(n_fft) / static_cast<double>(frame_len - k);
            if (k == 0) r0 = r;
            acc += r * r;
        }
        const double e_f = acc / n;
        // Relative to the frame's own zero-lag power: ~0.5 for a sinusoid,
        // ~(1 + ln N) / N for white noise, independent of level.
        energy[i] = r0 > 1e-20 ? e_f / (r0 * r0) : 0.0;
    }

    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(buf);
    fftw_free(spec);
    return energy;
}

std::vector<Landmark> detect_p(const AudioBuffer& audio, const DetectorConfig& cfg) {
    const double scale = static_cast<double>(audio.sample_rate) / kCanonicalRate;
    const auto frame_len = static_cast<std::size_t>(std::lround(static_cast<double>(cfg.p_frame_len) * scale));
    const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(static_cast<double>(cfg.p_hop) * scale)));
    const auto energy = periodicity_energy(audio.samples, frame_len, hop);

    // Sample-and-hold each frame's value around its centre.
    const std::size_t len = audio.samples.size();
    std::vector<double> held(len);
    const double half = 0.5 * static_cast<double>(frame_len);
    for (std::size_t t = 0; t < len; ++t) {
        const double pos = (static_cast<double>(t) - half) / static_cast<double>(hop);
        const long long idx = std::clamp<long long>(std::llround(pos), 0, static_cast<long long>(energy.size()) - 1);
        held[t] = energy[static_cast<std::size_t>(idx)];
    }

    // The fine smoothing window, converted from band frames to samples.
    const FrameConfig band_frames = cfg.frame;
    const std::size_t window = round_up_odd(round_up_odd(cfg.fine_smooth_frames) * band_frames.hop);
    const auto smoothed = moving_average(held, window);

    std::vector<Landmark> out;
    bool prev = false;
    auto jump_strength = [&](std::size_t t) {
        const std::size_t before = t >= hop ? t - hop : 0;
        const std::size_t after = std::min(len - 1, t + hop);
        const double lo = std::max(smoothed[before], kSilenceFloor);
        const double hi = std::max(smoothed[after], kSilenceFloor);
        return std::abs(10.0 * std::log10(hi / lo));
    };
    const double rate = audio.sample_rate;
    for (std::size_t t = 0; t < len; ++t) {
        const bool on = smoothed[t] >= cfg.p_binarize_theta;
        if (on != prev) {
            out.push_back({LandmarkKind::P, on ? Polarity::Plus : Polarity::Minus, static_cast<double>(t) / rate,
                           jump_strength(t)});
            prev = on;
        }
    }
    if (prev) out.push_back({LandmarkKind::P, Polarity::Minus, static_cast<double>(len) / rate, jump_strength(len - 1)});
    return out;
}

LandmarkSequence extract_landmarks(const AudioBuffer& audio, const DetectorConfig& cfg, std::string source_id) {
    cfg.validate();
    validate(audio);

    LandmarkSequence seq;
    seq.source_id = std::move(source_id);
    seq.start_s = 0.0;
    seq.end_s = audio.duration_s();

    const BandDynamics dyn = analyze_dynamics(compute_band_energies(audio, cfg.frame), cfg);
    const auto candidates = detect_g(dyn, cfg);
    GlottalPairing glottal = pair_g(candidates);

    auto& out = seq.landmarks;
    out = std::move(glottal.landmarks);
    for (auto&& part : {detect_b(dyn, glottal.segments, cfg), detect_s(dyn, glottal.segments, cfg),
                        detect_f_v(dyn, glottal.segments, cfg), detect_p(audio, cfg)}) {
        out.insert(out.end(), part.begin(), part.end());
    }
    std::stable_sort(out.begin(), out.end(), landmark_less);
    return seq;
}

std::vector<LandmarkSequence> extract_participant_landmarks(const AudioBuffer& audio, const Dialogue& dialogue,
                                                            const DetectorConfig& cfg) {
    std::vector<LandmarkSequence> out(dialogue.utterances.size());
    const std::size_t min_len = std::max(cfg.frame.frame_len, cfg.p_frame_len);
    for (std::size_t i = 0; i < dialogue.utterances.size(); ++i) {
        const Utterance& u = dialogue.utterances[i];
        auto& seq = out[i];
        seq.source_id = dialogue.id + "#" + std::to_string(i);
        seq.start_s = u.start_s;
        seq.end_s = u.end_s;
        if (u.speaker != Speaker::Participant) continue;

        const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(u.start_s * audio.sample_rate)));
        const auto last = std::min(audio.samples.size(), static_cast<std::size_t>(std::ceil(u.end_s * audio.sample_rate)));
        if (first >= last || last - first < min_len) continue;

        AudioBuffer span;
        span.sample_rate = audio.sample_rate;
        span.samples.assign(audio.samples.begin() + static_cast<std::ptrdiff_t>(first),
                            audio.samples.begin() + static_cast<std::ptrdiff_t>(last));
        auto local = extract_landmarks(span, cfg, seq.source_id);
        const double offset = static_cast<double>(first) / audio.sample_rate;
        for (auto& lm : local.landmarks) lm.time_s += offset;
        seq.landmarks = std::move(local.landmarks);
    }
    return out;
}

}  // namespace lmtk
