#pragma once

#include <cstdint>

namespace pcss {

/// Counter-seeded splitmix64 stream.
///
/// Monte Carlo loops draw one stream per (master seed, trial index), so the
/// result of a run does not depend on how trials are partitioned across
/// worker threads. The sequence for a given (seed, stream) pair is pinned
/// and platform-independent; std:: distributions are avoided for the same
/// reason.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}

    static Rng stream(std::uint64_t seed, std::uint64_t stream_index) {
        Rng r(0);
        r.state_ = mix(seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1));
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_double() < p; }

    /// Uniform in [0, bound); bound must be nonzero. Fixed-point multiply,
    /// bias is < 2^-64 per draw which is negligible at our sample sizes.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace pcss
