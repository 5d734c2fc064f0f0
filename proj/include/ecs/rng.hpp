#pragma once
/**
 * @file rng.hpp
 * @brief Deterministic platform-independent RNG (splitmix64) for corpus
 *        generation and property tests. Same seed, same stream, everywhere.
 */
#include <cstdint>

namespace ecs {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n >= 1. Rejection sampling keeps it exact.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (next() & 1) != 0; }

  private:
    std::uint64_t state_;
};

}  // namespace ecs
