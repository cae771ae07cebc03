#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <lmtk/audio.hpp>
#include <lmtk/landmarks.hpp>

namespace lmtk::testing {

inline constexpr int kRate = 16000;
inline constexpr double kFloorStd = 2e-3;  // about -54 dBFS

struct ExpectedLandmark {
    std::string symbol;
    double time_s;
};

struct Fixture {
    std::string name;
    AudioBuffer audio;
    std::vector<ExpectedLandmark> expected;  // time order
};

// Background noise floor of `seconds` duration.
std::vector<double> noise_floor(double seconds, std::uint64_t seed);

// 150 Hz tone with 10 ms raised-cosine ramps added at `start_s`.
void add_voicing(std::vector<double>& x, double start_s, double dur_s, double amplitude = 0.5);

// Noise burst with 5 ms ramps; the default band covers bands 2-6 and stays clear of band 1.
void add_burst(std::vector<double>& x, double start_s, double dur_s, std::uint64_t seed,
               double lo_hz = 1000.0, double hi_hz = 7500.0);

// 1.0 and 1.6 kHz tones (bands 2 and 3) until `edge_s`, then high-band noise (bands 4-6) to the end.
void add_frication_onset(std::vector<double>& x, double low_start_s, double edge_s, std::uint64_t seed,
                         bool with_low = true);

Fixture tone_onset(std::uint64_t seed = 1);
Fixture long_tone(std::uint64_t seed = 2);
Fixture two_tones(std::uint64_t seed = 3);
Fixture burst_unvoiced(std::uint64_t seed = 4);
Fixture burst_voiced(std::uint64_t seed = 5);
Fixture frication_unvoiced(std::uint64_t seed = 6);
Fixture frication_voiced(std::uint64_t seed = 7);
Fixture burst_one_band(std::uint64_t seed = 8);
Fixture burst_two_bands(std::uint64_t seed = 9);
Fixture high_rise_only(std::uint64_t seed = 10);
Fixture weak_tone(std::uint64_t seed = 11);
Fixture quiet_floor(std::uint64_t seed = 12);

std::vector<Fixture> all_fixtures(std::uint64_t seed_offset = 0);

// Match tolerance for a landmark kind in seconds.
double tolerance_s(LandmarkKind kind);

// Empty string when `got` matches `want` one-to-one in order within tolerance,
// else a description of the first mismatch.
std::string compare(const std::vector<Landmark>& got, const std::vector<ExpectedLandmark>& want);

std::string describe(const std::vector<Landmark>& lms);

AudioBuffer scaled(const AudioBuffer& a, double gain);
AudioBuffer prepend_floor(const AudioBuffer& a, std::size_t samples, std::uint64_t seed);

}  // namespace lmtk::testing
