#pragma once

#include <cstdint>

namespace mtv {

// Counter-based splittable generator, contract "mtv-rng/1": a 64-bit seed
// plus a 64-bit stream id select an independent splitmix64 sequence. Noise
// operations give every pixel its own stream (stream id = flat pixel index,
// offset by a caller-chosen salt), so serial and parallel corruption agree
// bit-exactly.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream_id) {
        state_ = mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(stream_id + 0x632BE59BD9B4E019ULL);
    }

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe as a log argument
    double next_unit_open() { return 1.0 - next_unit(); }

    // standard normal; Box-Muller with the second value cached per stream
    double next_gaussian();

  private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_ = 0;
    double cached_ = 0;
    bool has_cached_ = false;
};

struct RngSeed {
    uint64_t seed = 0;
};

}  // namespace mtv
