#pragma once

#include <cstdint>

namespace descenso {

/// Deterministic 64-bit generator (splitmix64). Identical streams on every
/// platform, which the byte-identical report guarantee relies on.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n); n must be positive.
    uint64_t below(uint64_t n) { return next() % n; }

    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }

    /// Derive an independent stream (for per-case seeding in sweeps).
    Rng fork() { return Rng(next()); }

private:
    uint64_t s_;
};

}  // namespace descenso
