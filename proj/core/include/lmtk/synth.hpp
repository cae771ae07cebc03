#pragma once

#include <cstdint>
#include <vector>

// Deterministic test signals.
namespace lmtk::synth {

std::vector<double> tone(double freq_hz, double amplitude, std::size_t n, int sample_rate, double phase = 0.0);

// Gaussian noise with the given standard deviation.
std::vector<double> white_noise(double stddev, std::size_t n, std::uint64_t seed);

// Gaussian noise restricted to [lo_hz, hi_hz] and scaled to the given RMS.
std::vector<double> band_noise(double lo_hz, double hi_hz, double rms, std::size_t n, int sample_rate,
                               std::uint64_t seed);

// Raised-cosine fade-in and fade-out over `ramp` samples each.
void apply_ramps(std::vector<double>& x, std::size_t ramp);

// dst[offset + i] += src[i], growing dst if needed.
void mix_into(std::vector<double>& dst, const std::vector<double>& src, std::size_t offset);

double rms(const std::vector<double>& x);

}  // namespace lmtk::synth
