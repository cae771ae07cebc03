#include "fixtures.hpp"

#include <cmath>
#include <sstream>

#include <lmtk/synth.hpp>

namespace lmtk::testing {

namespace {

std::size_t at(double seconds) { return static_cast<std::size_t>(std::llround(seconds * kRate)); }

Fixture make(std::string name, std::vector<double> x, std::vector<ExpectedLandmark> expected) {
    return {std::move(name), AudioBuffer{std::move(x), kRate}, std::move(expected)};
}

}  // namespace

std::vector<double> noise_floor(double seconds, std::uint64_t seed) {
    return synth::white_noise(kFloorStd, at(seconds), 0x5eed0000ULL + seed);
}

void add_voicing(std::vector<double>& x, double start_s, double dur_s, double amplitude) {
    auto t = synth::tone(150.0, amplitude, at(dur_s), kRate);
    synth::apply_ramps(t, at(0.010));
    synth::mix_into(x, t, at(start_s));
}

void add_burst(std::vector<double>& x, double start_s, double dur_s, std::uint64_t seed, double lo_hz,
               double hi_hz) {
    auto b = synth::band_noise(lo_hz, hi_hz, 0.1, at(dur_s), kRate, 0xb0000ULL + seed);
    synth::apply_ramps(b, at(0.005));
    synth::mix_into(x, b, at(start_s));
}

void add_frication_onset(std::vector<double>& x, double low_start_s, double edge_s, std::uint64_t seed,
                         bool with_low) {
    const std::size_t edge = at(edge_s);
    if (with_low) {
        for (double f : {1000.0, 1600.0}) {
            auto t = synth::tone(f, 0.1, edge - at(low_start_s), kRate);
            synth::apply_ramps(t, at(0.005));
            synth::mix_into(x, t, at(low_start_s));
        }
    }
    auto high = synth::band_noise(2300.0, 8000.0, 0.1, x.size() - edge, kRate, 0xf1000ULL + seed);
    synth::apply_ramps(high, at(0.005));
    synth::mix_into(x, high, edge);
}

Fixture tone_onset(std::uint64_t seed) {
    auto x = noise_floor(1.5, seed);
    add_voicing(x, 0.5, 0.5);
    return make("tone_onset", std::move(x), {{"g+", 0.5}, {"p+", 0.5}, {"g-", 1.0}, {"p-", 1.0}});
}

Fixture long_tone(std::uint64_t seed) {
    auto x = noise_floor(2.0, seed);
    add_voicing(x, 0.5, 1.0);
    return make("long_tone", std::move(x), {{"g+", 0.5}, {"p+", 0.5}, {"g-", 1.5}, {"p-", 1.5}});
}

Fixture two_tones(std::uint64_t seed) {
    auto x = noise_floor(2.5, seed);
    add_voicing(x, 0.5, 0.5);
    add_voicing(x, 1.5, 0.5);
    return make("two_tones", std::move(x),
                {{"g+", 0.5}, {"p+", 0.5}, {"g-", 1.0}, {"p-", 1.0},
                 {"g+", 1.5}, {"p+", 1.5}, {"g-", 2.0}, {"p-", 2.0}});
}

Fixture burst_unvoiced(std::uint64_t seed) {
    auto x = noise_floor(1.2, seed);
    add_burst(x, 0.5, 0.2, seed);
    return make("burst_unvoiced", std::move(x), {{"b+", 0.5}, {"b-", 0.7}});
}

Fixture burst_voiced(std::uint64_t seed) {
    auto x = noise_floor(1.6, seed);
    add_voicing(x, 0.3, 1.0);
    add_burst(x, 0.7, 0.2, seed);
    return make("burst_voiced", std::move(x),
                {{"g+", 0.3}, {"p+", 0.3}, {"s+", 0.7}, {"s-", 0.9}, {"g-", 1.3}, {"p-", 1.3}});
}

Fixture frication_unvoiced(std::uint64_t seed) {
    auto x = noise_floor(1.2, seed);
    add_frication_onset(x, 0.2, 0.7, seed);
    return make("frication_unvoiced", std::move(x), {{"p+", 0.2}, {"p-", 0.7}, {"f+", 0.7}});
}

Fixture frication_voiced(std::uint64_t seed) {
    auto x = noise_floor(1.4, seed);
    add_voicing(x, 0.2, 1.0);
    add_frication_onset(x, 0.4, 0.7, seed);
    return make("frication_voiced", std::move(x),
                {{"g+", 0.2}, {"p+", 0.2}, {"v+", 0.7}, {"g-", 1.2}, {"p-", 1.2}});
}

Fixture burst_one_band(std::uint64_t seed) {
    auto x = noise_floor(1.2, seed);
    add_burst(x, 0.5, 0.2, seed, 5000.0, 8000.0);
    return make("burst_one_band", std::move(x), {});
}

Fixture burst_two_bands(std::uint64_t seed) {
    auto x = noise_floor(1.2, seed);
    add_burst(x, 0.5, 0.2, seed, 3800.0, 7500.0);
    return make("burst_two_bands", std::move(x), {});
}

Fixture high_rise_only(std::uint64_t seed) {
    // Bands 4-6 rising alone is a three-band burst, not frication.
    auto x = noise_floor(1.2, seed);
    add_frication_onset(x, 0.2, 0.7, seed, false);
    return make("high_rise_only", std::move(x), {{"b+", 0.7}});
}

Fixture weak_tone(std::uint64_t seed) {
    // Tone power equal to the floor's band-1 power: a 3 dB rise.
    auto x = noise_floor(1.5, seed);
    const double amplitude = kFloorStd * std::sqrt(2.0 * 400.0 / 8000.0);
    add_voicing(x, 0.5, 0.5, amplitude);
    return make("weak_tone", std::move(x), {});
}

Fixture quiet_floor(std::uint64_t seed) { return make("quiet_floor", noise_floor(1.0, seed), {}); }

std::vector<Fixture> all_fixtures(std::uint64_t s) {
    return {tone_onset(1 + s),         long_tone(2 + s),        two_tones(3 + s),
            burst_unvoiced(4 + s),     burst_voiced(5 + s),     frication_unvoiced(6 + s),
            frication_voiced(7 + s),   burst_one_band(8 + s),   burst_two_bands(9 + s),
            high_rise_only(10 + s),    weak_tone(11 + s),       quiet_floor(12 + s)};
}

double tolerance_s(LandmarkKind kind) { return kind == LandmarkKind::P ? 0.050 : 0.030; }

std::string describe(const std::vector<Landmark>& lms) {
    std::ostringstream out;
    out.precision(4);
    out << '[';
    for (std::size_t i = 0; i < lms.size(); ++i) {
        if (i) out << ' ';
        out << lms[i].symbol() << '@' << lms[i].time_s;
    }
    out << ']';
    return out.str();
}

std::string compare(const std::vector<Landmark>& got, const std::vector<ExpectedLandmark>& want) {
    // Matched per symbol: coincident landmarks of different kinds may come in either order.
    std::ostringstream err;
    if (got.size() != want.size()) {
        err << "expected " << want.size() << " landmarks, got " << got.size() << ' ' << describe(got);
        return err.str();
    }
    std::vector<bool> used(got.size(), false);
    for (const auto& w : want) {
        bool found = false;
        for (std::size_t i = 0; i < got.size() && !found; ++i) {
            if (used[i] || got[i].symbol() != w.symbol) continue;
            if (std::abs(got[i].time_s - w.time_s) <= tolerance_s(got[i].kind)) {
                used[i] = true;
                found = true;
            }
        }
        if (!found) {
            err << "no " << w.symbol << " near " << w.time_s << " s in " << describe(got);
            return err.str();
        }
    }
    return {};
}

AudioBuffer scaled(const AudioBuffer& a, double gain) {
    AudioBuffer out = a;
    for (double& v : out.samples) v *= gain;
    return out;
}

AudioBuffer prepend_floor(const AudioBuffer& a, std::size_t samples, std::uint64_t seed) {
    AudioBuffer out;
    out.sample_rate = a.sample_rate;
    out.samples = synth::white_noise(kFloorStd, samples, 0x9e9e0000ULL + seed);
    out.samples.insert(out.samples.end(), a.samples.begin(), a.samples.end());
    return out;
}

}  // namespace lmtk::testing
