#include <benchmark/benchmark.h>

#include <lmtk/augment.hpp>
#include <lmtk/band_energy.hpp>
#include <lmtk/landmarks.hpp>
#include <lmtk/peaks.hpp>
#include <lmtk/synth.hpp>

namespace {

lmtk::AudioBuffer speechlike(double seconds) {
    const auto n = static_cast<std::size_t>(seconds * lmtk::kCanonicalRate);
    auto x = lmtk::synth::white_noise(2e-3, n, 1);
    for (double t = 0.2; t + 0.4 < seconds; t += 0.7) {
        auto v = lmtk::synth::tone(150.0, 0.4, static_cast<std::size_t>(0.3 * lmtk::kCanonicalRate), lmtk::kCanonicalRate);
        lmtk::synth::apply_ramps(v, 160);
        lmtk::synth::mix_into(x, v, static_cast<std::size_t>(t * lmtk::kCanonicalRate));
    }
    return {x, lmtk::kCanonicalRate};
}

void BM_BandEnergies(benchmark::State& state) {
    const auto audio = speechlike(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lmtk::compute_band_energies(audio, lmtk::FrameConfig{}));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(audio.samples.size()));
}
BENCHMARK(BM_BandEnergies)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_DetectPeaks(benchmark::State& state) {
    const auto x = lmtk::synth::white_noise(1.0, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(lmtk::detect_peaks(x, {0.5, 0.5, 20}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectPeaks)->Arg(1000)->Arg(100000);

void BM_ExtractLandmarks(benchmark::State& state) {
    const auto audio = speechlike(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lmtk::extract_landmarks(audio, lmtk::DetectorConfig{}));
}
BENCHMARK(BM_ExtractLandmarks)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ShuffleSubdialogues(benchmark::State& state) {
    std::vector<lmtk::Dialogue> corpus;
    for (int i = 0; i < 107; ++i) {
        lmtk::Dialogue d;
        d.id = std::to_string(i);
        d.label = i < 30 ? lmtk::Label::Depressed : lmtk::Label::Healthy;
        d.utterances.resize(60);
        corpus.push_back(std::move(d));
    }
    lmtk::AugmentConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(lmtk::shuffle_subdialogues(corpus, cfg));
}
BENCHMARK(BM_ShuffleSubdialogues)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
