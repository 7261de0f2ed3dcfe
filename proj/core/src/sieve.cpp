#include "mvdecay/sieve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mvdecay/summation.hpp"

namespace mvdecay {

SieveTable build_sieve(uint64_t x) {
    if (x < 2) throw std::invalid_argument("sieve limit must be >= 2");
    const uint64_t cap = 100000000ull;
    if (x > cap)
        throw std::length_error("sieve limit " + std::to_string(x) + " exceeds the " +
                                std::to_string(cap) + " cap (would need " +
                                std::to_string(4 * (x + 1)) + " bytes)");
    SieveTable t;
    t.limit = x;
    t.spf.assign(x + 1, 0);
    for (uint64_t i = 2; i <= x; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = uint32_t(i);
            t.primes.push_back(uint32_t(i));
        }
        for (uint32_t p : t.primes) {
            if (p > t.spf[i] || i * p > x) break;
            t.spf[i * p] = p;
        }
    }
    return t;
}

double chebyshev_theta(const SieveTable& sieve, uint64_t x) {
    PairwiseAccumulator<double> acc;
    for (uint32_t p : sieve.primes) {
        if (p > x) break;
        acc.add(std::log(double(p)));
    }
    return acc.total();
}

} // namespace mvdecay
