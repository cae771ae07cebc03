#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lmtk {

// Seedable generator whose draws are identical on every platform.
// std::mt19937_64 and std::seed_seq are fully specified by the standard; the
// std distributions are not, so uniform draws are derived from raw words here.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed);
    PortableRng(std::uint64_t seed, std::string_view stream_name);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of resolution.
    double next_unit();

    // Uniform in the open interval (lo, hi). Requires lo < hi.
    double uniform_open(double lo, double hi);

    // Uniform integer in [0, bound). Requires bound > 0. Rejection sampling,
    // so there is no modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// 64-bit FNV-1a; used to derive per-stream seeds from names.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace lmtk
