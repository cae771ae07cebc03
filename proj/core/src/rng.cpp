#include "lmtk/rng.hpp"

#include <cassert>

namespace lmtk {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

PortableRng::PortableRng(std::uint64_t seed) : engine_(make_engine(seed, 0)) {}

PortableRng::PortableRng(std::uint64_t seed, std::string_view stream_name)
    : engine_(make_engine(seed, fnv1a64(stream_name))) {}

double PortableRng::next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::uniform_open(double lo, double hi) {
    assert(lo < hi);
    for (;;) {
        const double u = next_unit();
        if (u == 0.0) continue;
        const double v = lo + (hi - lo) * u;
        if (v > lo && v < hi) return v;
    }
}

std::uint64_t PortableRng::uniform_below(std::uint64_t bound) {
    assert(bound > 0);
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit) return x % bound;
    }
}

}  // namespace lmtk
