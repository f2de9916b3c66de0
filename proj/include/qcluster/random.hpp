#pragma once

#include <cstdint>
#include <random>

namespace qcluster {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Deterministic random stream.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// derives doubles and bounded integers by hand, so a given (seed, stream id)
/// produces the same values on every platform. The std distributions are
/// implementation-defined and are deliberately not used here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed)
      : engine_{seed} {}

    /// Independent stream for trial/property `stream_id` under a master seed.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        return Rng(mix(seed ^ mix(stream_id + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform on (0, 1].
    double uniform_open_closed() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % bound;
    }

    /// Uniform integer on [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qcluster
