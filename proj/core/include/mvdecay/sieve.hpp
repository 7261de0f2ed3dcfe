#pragma once
#include <cstdint>
#include <vector>

namespace mvdecay {

// Smallest-prime-factor table for n <= limit (desk scale; the hard cap of
// 1e8 keeps the table at <= 400 MB).
struct SieveTable {
    uint64_t limit = 0;
    std::vector<uint32_t> spf;      // spf[n] = least prime factor, spf[p] = p
    std::vector<uint32_t> primes;
};

// Linear SPF sieve; deterministic. Throws std::length_error with the byte
// requirement when x exceeds the documented cap.
SieveTable build_sieve(uint64_t x);

// Exact sum of log p over primes p <= x (no PNT approximation).
double chebyshev_theta(const SieveTable& sieve, uint64_t x);

} // namespace mvdecay
