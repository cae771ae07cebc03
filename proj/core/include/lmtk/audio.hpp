#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace lmtk {

// Detection runs at this rate; band 6 tops out at 8 kHz.
inline constexpr int kCanonicalRate = 16000;

struct AudioBuffer {
    std::vector<double> samples;  // mono, normalized to [-1, 1]
    int sample_rate = kCanonicalRate;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

enum class WavEncoding { Pcm16, Float32 };

// Reads a RIFF/WAVE file (16-bit PCM or 32-bit float, any channel count).
// Channels are averaged to mono. Throws Error{UnsupportedEncoding,
// CorruptHeader, EmptyAudio, Io}.
AudioBuffer read_wav(const std::filesystem::path& path);

// Multichannel writer: one vector per channel, all the same length.
// Samples are clipped to [-1, 1] for PCM16.
void write_wav(const std::filesystem::path& path, std::span<const std::vector<double>> channels,
               int sample_rate, WavEncoding encoding = WavEncoding::Pcm16);

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavEncoding encoding = WavEncoding::Pcm16);

// Band-limited (Kaiser-windowed sinc) sample-rate conversion. Output length
// is round(n * target_rate / sample_rate); identity when rates match.
AudioBuffer resample(const AudioBuffer& audio, int target_rate);

// Throws EmptyAudio / InvalidArgument when the buffer cannot feed detection.
void validate(const AudioBuffer& audio);

}  // namespace lmtk
