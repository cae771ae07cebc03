#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lmtk/audio.hpp"

namespace lmtk {

inline constexpr std::size_t kNumBands = 6;

struct BandEdge {
    double lo_hz;
    double hi_hz;
};

// Bands 2 and 3 overlap (0.8-1.5 kHz and 1.2-2.0 kHz); that is intentional.
inline constexpr std::array<BandEdge, kNumBands> kBandEdges{{
    {0.0, 400.0},
    {800.0, 1500.0},
    {1200.0, 2000.0},
    {2000.0, 3500.0},
    {3500.0, 5000.0},
    {5000.0, 8000.0},
}};

// Linear-power floor applied before taking logs.
inline constexpr double kSilenceFloor = 1e-10;
inline constexpr double kFloorDb = -100.0;

enum class Window { Hann, Rect };

struct FrameConfig {
    std::size_t frame_len = 256;  // 16 ms at 16 kHz
    std::size_t hop = 16;         // 1 ms at 16 kHz
    Window window = Window::Hann;

    // 16 ms frames with a 1 ms hop at the given rate.
    static FrameConfig for_rate(int sample_rate);
};

struct BandEnergyTrack {
    std::array<std::vector<double>, kNumBands> bands;  // dB, one value per frame
    std::array<BandEdge, kNumBands> band_edges = kBandEdges;
    double frame_rate = 0.0;  // frames per second
    int sample_rate = kCanonicalRate;
    FrameConfig frame;

    std::size_t num_frames() const { return bands[0].size(); }

    // Time of the centre of frame n.
    double frame_time(double n) const;
};

enum class Pass { Coarse, Fine };

struct SmoothedTrack {
    std::vector<double> values;  // dB
    Pass pass = Pass::Fine;
    std::size_t window = 1;
};

struct DerivativeTrack {
    std::vector<double> values;  // dB difference
    std::size_t dt = 1;
    Pass pass = Pass::Fine;
};

// Frames the audio, takes the power spectrum of each frame and sums the bins
// whose centre frequency lies in each band (lower edge inclusive, upper edge
// exclusive except for the top band). Throws AudioTooShort when the audio is
// shorter than one frame.
BandEnergyTrack compute_band_energies(const AudioBuffer& audio, const FrameConfig& cfg);

// Centered moving average; edge windows are truncated to the valid range.
// `window` must be odd.
std::vector<double> moving_average(std::span<const double> x, std::size_t window);

// 10*log10 of the moving average of the linear power underlying `db_track`.
SmoothedTrack smooth(std::span<const double> db_track, std::size_t window, Pass pass);

// D[n] = L[n + dt] - L[n], then delayed by floor(dt / 2) so that the response
// to a step is centred on the step. Positions with no defined value are 0.
DerivativeTrack differentiate(const SmoothedTrack& track, std::size_t dt);

// Smallest odd integer >= n (and >= 1).
std::size_t round_up_odd(std::size_t n);

// frame_index,b1..b6 with a header row.
void write_band_csv(std::ostream& out, const BandEnergyTrack& track);

}  // namespace lmtk
