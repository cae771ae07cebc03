#include "lmtk/band_energy.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

#include <fftw3.h>

#include "fftw_lock.hpp"
#include "lmtk/error.hpp"

namespace lmtk {

std::mutex& detail::fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

namespace {

class RealFft {
public:
    explicit RealFft(std::size_t n) : n_(n) {
        in_ = fftw_alloc_real(n);
        out_ = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
    }
    ~RealFft() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    double* input() { return in_; }
    const fftw_complex* output() const { return out_; }
    void execute() { fftw_execute(plan_); }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    double* in_ = nullptr;
    fftw_complex* out_ = nullptr;
    fftw_plan plan_ = nullptr;
};

std::vector<double> make_window(std::size_t n, Window kind) {
    std::vector<double> w(n, 1.0);
    if (kind == Window::Hann && n > 1) {
        // Periodic Hann.
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
        }
    }
    return w;
}

double to_db(double power) { return 10.0 * std::log10(std::max(power, kSilenceFloor)); }

}  // namespace

FrameConfig FrameConfig::for_rate(int sample_rate) {
    FrameConfig cfg;
    cfg.frame_len = static_cast<std::size_t>(std::lround(0.016 * sample_rate));
    cfg.hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.001 * sample_rate)));
    return cfg;
}

double BandEnergyTrack::frame_time(double n) const {
    return (n * static_cast<double>(frame.hop) + 0.5 * static_cast<double>(frame.frame_len)) / sample_rate;
}

std::size_t round_up_odd(std::size_t n) {
    if (n == 0) return 1;
    return n % 2 == 1 ? n : n + 1;
}

BandEnergyTrack compute_band_energies(const AudioBuffer& audio, const FrameConfig& cfg) {
    if (cfg.hop == 0 || cfg.hop > cfg.frame_len) {
        throw Error(Errc::InvalidArgument, "frame config needs 0 < hop <= frame_len");
    }
    if (audio.sample_rate < 2 * static_cast<int>(kBandEdges.back().hi_hz)) {
        throw Error(Errc::InvalidArgument, "sample rate must be at least 16 kHz to cover band 6");
    }
    if (cfg.frame_len < 2 * static_cast<std::size_t>(audio.sample_rate / 400)) {
        throw Error(Errc::InvalidArgument, "frame too short to resolve band 1");
    }
    if (audio.samples.size() < cfg.frame_len) {
        throw Error(Errc::AudioTooShort, "audio shorter than one analysis frame");
    }

    const std::size_t n_frames = 1 + (audio.samples.size() - cfg.frame_len) / cfg.hop;
    const std::size_t n_fft = std::bit_ceil(cfg.frame_len);
    const std::size_t n_bins = n_fft / 2 + 1;
    const auto window = make_window(cfg.frame_len, cfg.window);
    double window_energy = 0.0;
    for (double w : window) window_energy += w * w;

    // Bin -> band membership, with the one-sided spectrum weights folded in.
    std::array<std::vector<std::pair<std::size_t, double>>, kNumBands> members;
    const double bin_hz = static_cast<double>(audio.sample_rate) / static_cast<double>(n_fft);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double f = static_cast<double>(k) * bin_hz;
        const double weight = (k == 0 || k == n_bins - 1) ? 1.0 : 2.0;
        for (std::size_t b = 0; b < kNumBands; ++b) {
            const bool top = b + 1 == kNumBands;
            if (f >= kBandEdges[b].lo_hz && (f < kBandEdges[b].hi_hz || (top && f <= kBandEdges[b].hi_hz))) {
                members[b].emplace_back(k, weight);
            }
        }
    }
    const double norm = 1.0 / (static_cast<double>(n_fft) * window_energy);

    BandEnergyTrack track;
    track.sample_rate = audio.sample_rate;
    track.frame = cfg;
    track.frame_rate = static_cast<double>(audio.sample_rate) / static_cast<double>(cfg.hop);
    for (auto& band : track.bands) band.resize(n_frames);

    RealFft fft(n_fft);
    std::vector<double> power(n_bins);
    for (std::size_t i = 0; i < n_frames; ++i) {
        double* in = fft.input();
        const double* src = audio.samples.data() + i * cfg.hop;
        for (std::size_t n = 0; n < cfg.frame_len; ++n) in[n] = src[n] * window[n];
        for (std::size_t n = cfg.frame_len; n < n_fft; ++n) in[n] = 0.0;
        fft.execute();
        const fftw_complex* out = fft.output();
        for (std::size_t k = 0; k < n_bins; ++k) power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
        for (std::size_t b = 0; b < kNumBands; ++b) {
            double e = 0.0;
            for (const auto& [k, weight] : members[b]) e += weight * power[k];
            track.bands[b][i] = to_db(e * norm);
        }
    }
    return track;
}

std::vector<double> moving_average(std::span<const double> x, std::size_t window) {
    if (window % 2 == 0) throw Error(Errc::InvalidArgument, "smoothing window must be odd");
    const std::size_t n = x.size();
    const std::size_t half = (window - 1) / 2;
    std::vector<double> out(n);
    if (n == 0) return out;

    if (window <= 64) {
        // Direct sums keep each output a function of its own window only.
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i >= half ? i - half : 0;
            const std::size_t hi = std::min(n - 1, i + half);
            double acc = 0.0;
            for (std::size_t k = lo; k <= hi; ++k) acc += x[k];
            out[i] = acc / static_cast<double>(hi - lo + 1);
        }
        return out;
    }

    // Long windows: running sum in extended precision.
    long double acc = 0.0L;
    std::size_t lo = 0;
    std::size_t hi = 0;  // exclusive
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t want_lo = i >= half ? i - half : 0;
        const std::size_t want_hi = std::min(n, i + half + 1);
        while (hi < want_hi) acc += x[hi++];
        while (lo < want_lo) acc -= x[lo++];
        out[i] = static_cast<double>(acc / static_cast<long double>(hi - lo));
    }
    return out;
}

SmoothedTrack smooth(std::span<const double> db_track, std::size_t window, Pass pass) {
    std::vector<double> linear(db_track.size());
    for (std::size_t i = 0; i < db_track.size(); ++i) linear[i] = std::pow(10.0, db_track[i] / 10.0);
    auto mean = moving_average(linear, window);
    SmoothedTrack out;
    out.pass = pass;
    out.window = window;
    out.values.resize(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i) out.values[i] = to_db(mean[i]);
    return out;
}

DerivativeTrack differentiate(const SmoothedTrack& track, std::size_t dt) {
    if (dt == 0) throw Error(Errc::InvalidArgument, "differentiation lag must be >= 1");
    const std::size_t n = track.values.size();
    const std::size_t shift = dt / 2;
    DerivativeTrack out;
    out.dt = dt;
    out.pass = track.pass;
    out.values.assign(n, 0.0);
    // out[n] = L[n - shift + dt] - L[n - shift]
    for (std::size_t i = shift; i < n; ++i) {
        const std::size_t src = i - shift;
        if (src + dt < n) out.values[i] = track.values[src + dt] - track.values[src];
    }
    return out;
}

void write_band_csv(std::ostream& out, const BandEnergyTrack& track) {
    out << "frame_index";
    for (std::size_t b = 0; b < kNumBands; ++b) out << ",b" << (b + 1);
    out << '\n';
    for (std::size_t i = 0; i < track.num_frames(); ++i) {
        out << i;
        for (std::size_t b = 0; b < kNumBands; ++b) out << ',' << track.bands[b][i];
        out << '\n';
    }
}

}  // namespace lmtk
