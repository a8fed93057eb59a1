#pragma once

#include <cstdint>

namespace pald {

// Counter-based random streams. Every draw is a pure function of
// (key, counter), so Monte Carlo work can be split across threads in any
// order and still reproduce bit-identical results. The generator is the
// splitmix64 finalizer applied to an additive Weyl sequence.
namespace rng {

inline constexpr std::uint64_t kWeylStep = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives a stream key from a seed and up to three identifying indices
// (e.g. the (x, y, z) triple owning a Monte Carlo estimate).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t k = mix(seed + kWeylStep);
    k = mix(k ^ (a + kWeylStep));
    k = mix(k ^ (b + kWeylStep));
    k = mix(k ^ (c + kWeylStep));
    return k;
}

class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kWeylStep); }

    // Uniform on [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-half_width, half_width).
    double next_symmetric(double half_width) {
        return (2.0 * next_double() - 1.0) * half_width;
    }

    // Uniform integer in [0, bound). Bound must be nonzero; modulo bias is
    // negligible for the desk-scale bounds used here.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rng
}  // namespace pald
