#pragma once

#include <cstdint>

namespace ndg {

/// SplitMix64 stream. Fixed algorithm (not std::mt19937) so that seeds in
/// reproducer files mean the same thing on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] by modulo reduction (bias negligible at desk scale).
    long long uniform(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Derives an independent substream; used to keep trial results stable
    /// under reordering or parallel fan-out.
    Rng fork(std::uint64_t label) {
        return Rng(next() ^ (0xd1342543de82ef95ULL * (label + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace ndg
