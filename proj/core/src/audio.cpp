#include "lmtk/audio.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "lmtk/error.hpp"

namespace lmtk {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits = 0;
};

double decode_sample(const std::uint8_t* p, const FmtChunk& fmt) {
    if (fmt.format == kFormatPcm) {
        const auto v = static_cast<std::int16_t>(read_u16(p));
        return static_cast<double>(v) / 32768.0;
    }
    const std::uint32_t bits = read_u32(p);
    return static_cast<double>(std::bit_cast<float>(bits));
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw Error(Errc::CorruptHeader, path.string() + ": not a RIFF/WAVE file");
    }

    FmtChunk fmt;
    bool have_fmt = false;
    const std::uint8_t* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* hdr = bytes.data() + pos;
        std::size_t size = read_u32(hdr + 4);
        const std::size_t body = pos + 8;
        const bool is_data = std::memcmp(hdr, "data", 4) == 0;
        if (body + size > bytes.size()) {
            // Streaming writers leave 0xFFFFFFFF in the data size.
            if (is_data && size == 0xFFFFFFFFu) {
                size = bytes.size() - body;
            } else {
                throw Error(Errc::CorruptHeader, path.string() + ": chunk overruns file");
            }
        }
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (size < 16) throw Error(Errc::CorruptHeader, path.string() + ": short fmt chunk");
            const std::uint8_t* f = bytes.data() + body;
            fmt.format = read_u16(f);
            fmt.channels = read_u16(f + 2);
            fmt.sample_rate = read_u32(f + 4);
            fmt.block_align = read_u16(f + 12);
            fmt.bits = read_u16(f + 14);
            if (fmt.format == kFormatExtensible) {
                if (size < 40) throw Error(Errc::CorruptHeader, path.string() + ": short extensible fmt");
                fmt.format = read_u16(f + 24);
            }
            have_fmt = true;
        } else if (is_data) {
            data = bytes.data() + body;
            data_size = size;
        }
        pos = body + size + (size & 1);
    }

    if (!have_fmt || data == nullptr) {
        throw Error(Errc::CorruptHeader, path.string() + ": missing fmt or data chunk");
    }
    const bool pcm16 = fmt.format == kFormatPcm && fmt.bits == 16;
    const bool f32 = fmt.format == kFormatFloat && fmt.bits == 32;
    if (!pcm16 && !f32) {
        throw Error(Errc::UnsupportedEncoding,
                    path.string() + ": format " + std::to_string(fmt.format) + " with " +
                        std::to_string(fmt.bits) + " bits");
    }
    if (fmt.channels == 0 || fmt.sample_rate == 0 ||
        fmt.block_align != fmt.channels * (fmt.bits / 8)) {
        throw Error(Errc::CorruptHeader, path.string() + ": inconsistent fmt chunk");
    }

    const std::size_t frames = data_size / fmt.block_align;
    if (frames == 0) throw Error(Errc::EmptyAudio, path.string());

    AudioBuffer out;
    out.sample_rate = static_cast<int>(fmt.sample_rate);
    out.samples.resize(frames);
    const std::size_t width = fmt.bits / 8;
    for (std::size_t i = 0; i < frames; ++i) {
        const std::uint8_t* frame = data + i * fmt.block_align;
        double acc = 0.0;
        for (std::size_t c = 0; c < fmt.channels; ++c) acc += decode_sample(frame + c * width, fmt);
        const double v = acc / fmt.channels;
        out.samples[i] = std::isfinite(v) ? std::clamp(v, -1.0, 1.0) : 0.0;
    }
    return out;
}

void write_wav(const std::filesystem::path& path, std::span<const std::vector<double>> channels,
               int sample_rate, WavEncoding encoding) {
    if (channels.empty() || sample_rate <= 0) {
        throw Error(Errc::InvalidArgument, "write_wav needs at least one channel and a positive rate");
    }
    const std::size_t frames = channels.front().size();
    for (const auto& ch : channels) {
        if (ch.size() != frames) throw Error(Errc::InvalidArgument, "channel lengths differ");
    }

    const auto n_ch = static_cast<std::uint16_t>(channels.size());
    const std::uint16_t bits = encoding == WavEncoding::Pcm16 ? 16 : 32;
    const auto block = static_cast<std::uint16_t>(n_ch * bits / 8);
    const auto data_bytes = static_cast<std::uint32_t>(frames * block);

    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put_u32(out, 16);
    put_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
    put_u16(out, n_ch);
    put_u32(out, static_cast<std::uint32_t>(sample_rate));
    put_u32(out, static_cast<std::uint32_t>(sample_rate) * block);
    put_u16(out, block);
    put_u16(out, bits);
    out += "data";
    put_u32(out, data_bytes);
    for (std::size_t i = 0; i < frames; ++i) {
        for (const auto& ch : channels) {
            if (encoding == WavEncoding::Pcm16) {
                const double q = std::round(std::clamp(ch[i], -1.0, 1.0) * 32768.0);
                put_u16(out, static_cast<std::uint16_t>(
                                 static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0))));
            } else {
                put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(ch[i])));
            }
        }
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::Io, "cannot write " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio, WavEncoding encoding) {
    const std::array<std::vector<double>, 1> ch{audio.samples};
    write_wav(path, std::span<const std::vector<double>>(ch), audio.sample_rate, encoding);
}

AudioBuffer resample(const AudioBuffer& audio, int target_rate) {
    if (target_rate <= 0 || audio.sample_rate <= 0) {
        throw Error(Errc::InvalidArgument, "resample needs positive rates");
    }
    if (target_rate == audio.sample_rate) return audio;

    const double ratio = static_cast<double>(target_rate) / audio.sample_rate;
    const std::size_t n_in = audio.samples.size();
    const auto n_out = static_cast<std::size_t>(std::llround(static_cast<double>(n_in) * ratio));

    // Low-pass at the narrower Nyquist, expressed in input samples.
    const double scale = std::min(1.0, ratio);
    const double cutoff = 0.5 * scale * 0.97;
    const double half_width = 16.0 / scale;
    constexpr double kBeta = 8.6;
    const double i0_beta = std::cyl_bessel_i(0.0, kBeta);

    auto kernel = [&](double t) {
        const double x = t / half_width;
        if (std::abs(x) >= 1.0) return 0.0;
        const double w = std::cyl_bessel_i(0.0, kBeta * std::sqrt(1.0 - x * x)) / i0_beta;
        const double arg = 2.0 * cutoff * t;
        const double sinc = arg == 0.0 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
        return 2.0 * cutoff * sinc * w;
    };

    AudioBuffer out;
    out.sample_rate = target_rate;
    out.samples.resize(n_out);
    for (std::size_t n = 0; n < n_out; ++n) {
        const double t = static_cast<double>(n) / ratio;
        const auto lo = static_cast<long long>(std::ceil(t - half_width));
        const auto hi = static_cast<long long>(std::floor(t + half_width));
        double acc = 0.0;
        for (long long k = std::max(0LL, lo); k <= hi && k < static_cast<long long>(n_in); ++k) {
            acc += audio.samples[static_cast<std::size_t>(k)] * kernel(t - static_cast<double>(k));
        }
        out.samples[n] = std::clamp(acc, -1.0, 1.0);
    }
    return out;
}

void validate(const AudioBuffer& audio) {
    if (audio.samples.empty()) throw Error(Errc::EmptyAudio, "audio buffer has no samples");
    if (audio.sample_rate <= 0) throw Error(Errc::InvalidArgument, "sample rate must be positive");
    for (double s : audio.samples) {
        if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
            throw Error(Errc::InvalidArgument, "samples must be finite and within [-1, 1]");
        }
    }
}

}  // namespace lmtk
