#pragma once

#include <cmath>
#include <cstdint>

namespace tsvf {

namespace detail {

/// 64-bit avalanche mix (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based uniform generator.  Every variate is a pure function of
/// (seed, stream_index, draw counter), so per-trial streams can run in any
/// order, on any number of workers, and still reproduce bit-for-bit.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : seed_(seed),
          stream_(stream_index),
          base_(detail::mix64(detail::mix64(seed + 0x9E3779B97F4A7C15ull) ^
                              detail::mix64(stream_index + 0xD1B54A32D192ED03ull))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }
    std::uint64_t draws() const { return counter_; }

    std::uint64_t next_u64() {
        return detail::mix64(base_ + 0x9E3779B97F4A7C15ull * ++counter_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; consumes two uniforms per call.
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

/// Packs (scenario salt, experiment number, trial) into a stream index so
/// independent ensembles never share a stream.  Trials occupy the low 32
/// bits; run_ensemble adds the trial number itself.
inline std::uint64_t stream_block(std::uint32_t salt, std::uint32_t experiment) {
    return (static_cast<std::uint64_t>(salt) << 40) |
           (static_cast<std::uint64_t>(experiment & 0xFF) << 32);
}

/// FNV-1a of a name, reduced to the salt width used by stream_block.
inline std::uint32_t stream_salt(const char* name) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char* p = name; *p; ++p) h = (h ^ static_cast<unsigned char>(*p)) * 1099511628211ull;
    return static_cast<std::uint32_t>(h & 0xFFFFFF);
}

}  // namespace tsvf
