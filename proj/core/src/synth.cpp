#include "lmtk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "fftw_lock.hpp"
#include "lmtk/error.hpp"
#include "lmtk/rng.hpp"

namespace lmtk::synth {

std::vector<double> tone(double freq_hz, double amplitude, std::size_t n, int sample_rate, double phase) {
    std::vector<double> x(n);
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate;
    for (std::size_t i = 0; i < n; ++i) x[i] = amplitude * std::sin(w * static_cast<double>(i) + phase);
    return x;
}

std::vector<double> white_noise(double stddev, std::size_t n, std::uint64_t seed) {
    PortableRng rng(seed);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; i += 2) {
        // Box-Muller
        const double u1 = rng.uniform_open(0.0, 1.0);
        const double u2 = rng.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        x[i] = stddev * r * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < n) x[i + 1] = stddev * r * std::sin(2.0 * std::numbers::pi * u2);
    }
    return x;
}

std::vector<double> band_noise(double lo_hz, double hi_hz, double target_rms, std::size_t n, int sample_rate,
                               std::uint64_t seed) {
    if (n == 0) return {};
    if (!(lo_hz >= 0.0 && lo_hz < hi_hz)) throw Error(Errc::InvalidArgument, "band_noise needs lo < hi");
    std::vector<double> x = white_noise(1.0, n, seed);
    const std::size_t bins = n / 2 + 1;
    auto* spec = fftw_alloc_complex(bins);
    fftw_plan fwd;
    fftw_plan inv;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), x.data(), spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, x.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    for (std::size_t k = 0; k < bins; ++k) {
        const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n);
        if (f < lo_hz || f > hi_hz) spec[k][0] = spec[k][1] = 0.0;
    }
    fftw_execute(inv);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
    }
    fftw_free(spec);

    const double r = rms(x);
    if (r > 0.0) {
        for (double& v : x) v *= target_rms / r;
    }
    return x;
}

void apply_ramps(std::vector<double>& x, std::size_t ramp) {
    ramp = std::min(ramp, x.size() / 2);
    for (std::size_t i = 0; i < ramp; ++i) {
        const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) / ramp);
        x[i] *= g;
        x[x.size() - 1 - i] *= g;
    }
}

void mix_into(std::vector<double>& dst, const std::vector<double>& src, std::size_t offset) {
    if (dst.size() < offset + src.size()) dst.resize(offset + src.size(), 0.0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[offset + i] += src[i];
}

double rms(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace lmtk::synth
