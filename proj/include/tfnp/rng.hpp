#pragma once

#include <cstdint>

namespace tfnp {

// xorshift64* (Vigna). Spelled out here so instances reproduce bit-for-bit
// across implementations and languages:
//   state(0) = seed, or 0x9E3779B97F4A7C15 when seed = 0
//   next():  x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
//            return x * 0x2545F4914F6CDD1D
//   next_below(b) = next() % b
struct Xorshift64Star {
    uint64_t state;

    explicit Xorshift64Star(uint64_t seed) : state(seed == 0 ? 0x9E3779B97F4A7C15ull : seed) {}

    uint64_t next() {
        uint64_t x = state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state = x;
        return x * 0x2545F4914F6CDD1Dull;
    }

    uint64_t next_below(uint64_t bound) { return next() % bound; }
};

}  // namespace tfnp
