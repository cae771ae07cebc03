#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <lmtk/analysis.hpp>
#include <lmtk/augment.hpp>
#include <lmtk/landmarks.hpp>
#include <lmtk/peaks.hpp>
#include <lmtk/prompts.hpp>
#include <lmtk/tokens.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

namespace {

using namespace lmtk;
using Clock = std::chrono::steady_clock;

// Collects failure messages for one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 20) failures.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_peaks(const std::vector<Peak>& a, const std::vector<Peak>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].index != b[i].index || a[i].height != b[i].height || a[i].prominence != b[i].prominence ||
            a[i].width != b[i].width) {
            return false;
        }
    }
    return true;
}

void peaks_vs_oracle(Check& c) {
    const auto t0 = Clock::now();
    struct Setting {
        double h, p;
        std::size_t d;
    };
    const std::vector<Setting> settings{{-1e9, 0.0, 0},  {0.0, 0.0, 0},  {0.0, 0.5, 0},  {0.5, 0.5, 3},
                                        {1.0, 1.0, 5},   {-1.0, 2.0, 1}, {2.0, 0.1, 10}, {0.0, 3.0, 20},
                                        {-0.5, 0.25, 2}, {1.5, 1.5, 50}};
    std::mt19937_64 gen(20240601);
    std::normal_distribution<double> step(0.0, 1.0);
    std::uniform_int_distribution<int> lattice(-2, 2);
    std::size_t signals = 0;
    for (int s = 0; s < 120; ++s) {
        std::vector<double> x(200);
        double v = 0.0;
        for (auto& xi : x) {
            v += s % 2 == 0 ? step(gen) : static_cast<double>(lattice(gen));
            xi = v;
        }
        ++signals;
        for (const auto& st : settings) {
            const auto got = detect_peaks(x, {st.h, st.p, st.d});
            const auto want = oracle::peaks(x, st.h, st.p, st.d);
            c.expect(same_peaks(got, want), "signal " + std::to_string(s) + " h=" + std::to_string(st.h) +
                                                " p=" + std::to_string(st.p) + " d=" + std::to_string(st.d));
        }
    }
    c.expect(signals >= 100, "too few signals");
    const double dt = seconds_since(t0);
    c.expect(dt < 5.0, "runtime " + std::to_string(dt) + " s");
}

void fixture_ground_truth(Check& c) {
    const auto t0 = Clock::now();
    for (const auto& f : testing::all_fixtures()) {
        const auto lms = extract_landmarks(f.audio, DetectorConfig{}, f.name).landmarks;
        const std::string diff = testing::compare(lms, f.expected);
        c.expect(diff.empty(), f.name + ": " + diff + " got " + testing::describe(lms));
    }
    // The tone onset spelled out: one g pair within 30 ms and one p pair within 50 ms of the edges.
    const auto tone = testing::tone_onset();
    const auto lms = extract_landmarks(tone.audio, DetectorConfig{}).landmarks;
    std::vector<Landmark> gs;
    std::vector<Landmark> ps;
    for (const auto& l : lms) {
        if (l.kind == LandmarkKind::G) gs.push_back(l);
        if (l.kind == LandmarkKind::P) ps.push_back(l);
    }
    const double on = tone.expected.front().time_s;
    const double off = tone.expected.back().time_s;
    c.expect(gs.size() == 2 && gs[0].polarity == Polarity::Plus && std::abs(gs[0].time_s - on) <= 0.030 &&
                 std::abs(gs[1].time_s - off) <= 0.030,
             "tone onset g pair: " + testing::describe(gs));
    c.expect(ps.size() == 2 && ps[0].polarity == Polarity::Plus && std::abs(ps[0].time_s - on) <= 0.050 &&
                 std::abs(ps[1].time_s - off) <= 0.050,
             "tone onset p pair: " + testing::describe(ps));
    const double dt = seconds_since(t0);
    c.expect(dt < 10.0, "runtime " + std::to_string(dt) + " s");
}

void g_pairing(Check& c) {
    std::mt19937_64 gen(31337);
    std::uniform_real_distribution<double> strength(6.0, 30.0);
    std::bernoulli_distribution plus(0.5);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = static_cast<std::size_t>(trial % 8) + 1;
        std::vector<Landmark> cands;
        for (std::size_t i = 0; i < n; ++i) {
            cands.push_back({LandmarkKind::G, plus(gen) ? Polarity::Plus : Polarity::Minus,
                             0.05 * static_cast<double>(i + 1), trial % 5 == 0 ? 10.0 : strength(gen)});
        }
        const auto got = pair_g(cands);
        const auto want = oracle::pair_g(cands);
        bool ok = got.landmarks.size() == want.indices.size();
        for (std::size_t k = 0; ok && k < want.indices.size(); ++k) ok = got.landmarks[k] == cands[want.indices[k]];
        c.expect(ok, "trial " + std::to_string(trial));
    }
}

void bigrams(Check& c) {
    const auto worked = merge_bigrams(parse_symbol_string("g+ p- s+ p+ p+ p- g- b-"));
    c.expect(render_token_string(worked) == "(g+p-) (s+p+) (p+p-) (g-b-)", "example gave " + render_token_string(worked));
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::size_t> kind(0, kAllKinds.size() - 1);
    std::uniform_int_distribution<std::size_t> len(0, 200);
    std::bernoulli_distribution pol(0.5);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<LandmarkSymbol> s;
        for (std::size_t n = len(gen); n > 0; --n) s.push_back({kAllKinds[kind(gen)], pol(gen) ? Polarity::Plus : Polarity::Minus});
        c.expect(merge_bigrams(s).size() == (s.size() + 1) / 2, "length " + std::to_string(s.size()));
    }
}

std::string sha256_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

void augmentation(Check& c) {
    std::vector<Dialogue> corpus;
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<std::size_t> turns(2, 80);
    for (int i = 0; i < 107; ++i) {
        Dialogue d;
        d.id = std::to_string(300 + i);
        d.label = i < 30 ? Label::Depressed : Label::Healthy;
        const std::size_t T = turns(gen);
        for (std::size_t k = 0; k < T; ++k) {
            d.utterances.push_back({Speaker::Participant, "t" + std::to_string(k), static_cast<double>(k),
                                    static_cast<double>(k) + 0.5, false});
        }
        corpus.push_back(std::move(d));
    }
    AugmentConfig cfg;
    cfg.m_plus = 1000;
    cfg.rng_seed = 42;
    const auto plan = plan_augmentation(corpus, cfg);
    c.expect(plan.m_minus == 390, "m_minus " + std::to_string(plan.m_minus));

    const auto subs = shuffle_subdialogues(corpus, cfg);
    std::size_t pos = 0;
    std::map<std::string, std::size_t> T_of;
    for (const auto& d : corpus) T_of[d.id] = d.utterances.size();
    for (const auto& s : subs) {
        pos += s.label == Label::Depressed;
        const std::size_t T = T_of[s.parent_id];
        const double lo = std::floor(cfg.eps_low * static_cast<double>(T));
        const double hi = std::max(std::ceil(cfg.eps_high * static_cast<double>(T)), 2.0);
        const bool ok = s.start_idx <= s.end_idx && s.end_idx < T && static_cast<double>(s.length()) >= lo &&
                        static_cast<double>(s.length()) <= hi;
        c.expect(ok, s.parent_id + " [" + std::to_string(s.start_idx) + ", " + std::to_string(s.end_idx) + "] T=" +
                         std::to_string(T));
    }
    const std::size_t neg = subs.size() - pos;
    const double imbalance = std::abs(static_cast<double>(pos) - static_cast<double>(neg)) /
                             static_cast<double>(std::max(pos, neg));
    c.expect(imbalance <= 0.001, "imbalance " + std::to_string(imbalance));

    testing::TempDir dir;
    auto write_run = [&](const std::string& name) {
        std::ofstream out(dir / name, std::ios::binary);
        for (const auto& s : shuffle_subdialogues(corpus, cfg)) {
            out << s.parent_id << '\t' << s.start_idx << '\t' << s.end_idx << '\t' << to_string(s.label) << '\n';
        }
    };
    write_run("a.tsv");
    write_run("b.tsv");
    c.expect(sha256_file(dir / "a.tsv") == sha256_file(dir / "b.tsv"), "output hashes differ");
}

void goldens(Check& c) {
    const std::filesystem::path g(LMTK_GOLDEN_DIR);
    auto check = [&](TemplateKind k, std::string_view tr, std::string_view lm, const std::string& file) {
        c.expect(render_template(k, tr, lm) == testing::slurp(g / file), file);
    };
    check(TemplateKind::HintDepressed, "{transcript}", "{landmark}", "hint_depressed.txt");
    check(TemplateKind::HintHealthy, "{transcript}", "{landmark}", "hint_healthy.txt");
    check(TemplateKind::DetectText, "{transcript}", "", "detect_text.txt");
    check(TemplateKind::DetectLandmark, "", "{landmarks}", "detect_landmark.txt");
    check(TemplateKind::DetectMultimodal, "{transcript}", "{landmarks}", "detect_multimodal.txt");
}

void contribution(Check& c) {
    c.expect(contribution_score(MatrixDump{"z", 4, 5, std::vector<double>(20, 0.0)}) == 0.0, "zero matrix");
    for (std::size_t n = 1; n <= 32; ++n) {
        MatrixDump id{"I", n, n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i) id.entries[i * n + i] = 1.0;
        c.expect(std::abs(contribution_score(id) - 1.0 / static_cast<double>(n)) <= 1e-12, "identity " + std::to_string(n));
    }
    std::mt19937_64 gen(8);
    std::normal_distribution<double> v(0.0, 0.2);
    std::uniform_real_distribution<double> alpha(-10.0, 10.0);
    std::vector<MatrixDump> layers;
    for (int i = 0; i < 64; ++i) {
        MatrixDump m{"layers." + std::to_string(i), 8, 16, {}};
        for (int k = 0; k < 128; ++k) m.entries.push_back(v(gen));
        const double a = alpha(gen);
        MatrixDump scaled = m;
        for (double& e : scaled.entries) e *= a;
        c.expect(std::abs(contribution_score(scaled) - std::abs(a) * contribution_score(m)) <= 1e-12,
                 "scale " + std::to_string(a));
        layers.push_back(std::move(m));
    }
    std::vector<std::pair<double, std::string>> ref;
    for (const auto& m : layers) ref.push_back({oracle::mean_abs(m), m.layer_name});
    std::sort(ref.begin(), ref.end(),
              [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    const auto r = rank_contributions(layers, 10, 10);
    for (std::size_t i = 0; i < layers.size(); ++i) c.expect(r.all[i].layer_name == ref[i].second, "rank " + std::to_string(i));
}

void vote_f1(Check& c) {
    const std::vector<std::vector<int>> v{{1}, {1}, {0}};
    c.expect(majority_vote(v) == std::vector<int>{1}, "(1,1,0)");
    const std::vector<int> truth{1, 1, 1, 0, 0};
    const std::vector<int> pred{1, 1, 0, 1, 0};
    c.expect(f1_score(pred, truth) == 2.0 / 3.0, "F1 2/3");
    const std::vector<int> none(5, 0);
    c.expect(f1_score(none, truth) == 0.0, "all-negative");
}

void invariance(Check& c) {
    const DetectorConfig cfg;
    for (const auto& f : testing::all_fixtures()) {
        const auto ref = extract_landmarks(f.audio, cfg).landmarks;
        c.expect(extract_landmarks(f.audio, cfg).landmarks == ref, f.name + ": rerun differs");

        const std::size_t pad = 4000;
        const double shift = static_cast<double>(pad) / testing::kRate;
        const auto shifted = extract_landmarks(testing::prepend_floor(f.audio, pad, 99), cfg).landmarks;
        bool ok = shifted.size() == ref.size();
        for (std::size_t i = 0; ok && i < ref.size(); ++i) {
            ok = shifted[i].symbol() == ref[i].symbol() && std::abs(shifted[i].time_s - shift - ref[i].time_s) <= 0.001 + 1e-9;
        }
        c.expect(ok, f.name + ": shift gave " + testing::describe(shifted));

        for (double gain : {1.0, 0.9, 0.7, 0.5, 0.3, 0.2, 0.11}) {
            const auto got = extract_landmarks(testing::scaled(f.audio, gain), cfg).landmarks;
            bool same = got.size() == ref.size();
            for (std::size_t i = 0; same && i < ref.size(); ++i) same = got[i].symbol() == ref[i].symbol();
            c.expect(same, f.name + ": gain " + std::to_string(gain) + " gave " + testing::describe(got));
        }
    }
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"peak detector equals reference", peaks_vs_oracle},
        {"synthetic landmark ground truth", fixture_ground_truth},
        {"g pairing equals exhaustive search", g_pairing},
        {"bigram merge", bigrams},
        {"sub-dialogue augmentation", augmentation},
        {"template goldens", goldens},
        {"contribution score closed forms and ranking", contribution},
        {"vote and F1 identities", vote_f1},
        {"determinism and invariance", invariance},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        if (i + 1 == criteria.size()) {
            const double total = seconds_since(t0);
            c.expect(total < 120.0, "suite runtime " + std::to_string(total) + " s");
        }
        const bool pass = c.failures.empty();
        failed += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first << '\n';
        for (const auto& f : c.failures) std::cout << "    " << f << '\n';
    }
    std::cout << "acceptance: " << criteria.size() - static_cast<std::size_t>(failed) << '/' << criteria.size()
              << " passed in " << seconds_since(t0) << " s\n";
    return failed == 0 ? 0 : 1;
}
