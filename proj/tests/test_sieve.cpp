#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvdecay/sieve.hpp"

using namespace mvdecay;

TEST_CASE("smallest prime factors and the prime list") {
    const auto s = build_sieve(100);
    CHECK(s.limit == 100);
    CHECK(s.primes.size() == 25);
    CHECK(s.primes.front() == 2);
    CHECK(s.primes.back() == 97);
    CHECK(s.spf[60] == 2);
    CHECK(s.spf[49] == 7);
    CHECK(s.spf[97] == 97);
    for (size_t i = 0; i + 1 < s.primes.size(); ++i)
        CHECK(s.primes[i] < s.primes[i + 1]);
}

TEST_CASE("factorization through spf reconstructs every integer") {
    const auto s = build_sieve(1000);
    for (uint64_t n = 2; n <= 1000; ++n) {
        uint64_t m = n, prod = 1;
        while (m > 1) {
            const uint32_t p = s.spf[m];
            CHECK(m % p == 0);
            prod *= p;
            m /= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("prime log-weight sums") {
    const auto s = build_sieve(100);
    CHECK(chebyshev_theta(s, 10) ==
          doctest::Approx(std::log(2.0 * 3 * 5 * 7)).epsilon(1e-12));
    double direct = 0.0;
    for (uint64_t p : s.primes) direct += std::log(double(p));
    CHECK(chebyshev_theta(s, 100) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(chebyshev_theta(s, 1) == 0.0);
}
