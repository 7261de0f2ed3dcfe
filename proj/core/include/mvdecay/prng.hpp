#pragma once
#include <cstdint>

namespace mvdecay {

// splitmix64: tiny, seed-stable across platforms. Used everywhere a "seeded"
// input is promised so outputs are reproducible bit-for-bit.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() {
        return double(next() >> 11) * 0x1.0p-53;
    }
    // uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

} // namespace mvdecay
