#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "mvdecay/chi.hpp"
#include "mvdecay/sieve.hpp"

namespace mvdecay {

// Multiplicative f with |f(n)| <= 1, described by its value on prime powers.
struct MultiplicativeSpec {
    std::function<std::complex<double>(uint64_t p, int k)> rule;
    bool completely = false;  // then rule(p,k) == rule(p,1)^k
    std::string label;        // canonical form (fingerprint input)
};

MultiplicativeSpec mult_one();
MultiplicativeSpec mult_moebius();
MultiplicativeSpec mult_liouville();
MultiplicativeSpec mult_nt_power(double alpha);  // f(p^k) = p^{ik*alpha}
// f(p) = table[p mod modulus], completely multiplicative (character-like).
MultiplicativeSpec mult_char_table(uint32_t modulus,
                                   std::vector<std::complex<double>> table);
// f(p) i.i.d. (in p, keyed by seed) from a fixed 16-point subset of D.
MultiplicativeSpec mult_random_in_region(const ConvexRegion& region, uint64_t seed);
// f(p) = 1 for p <= y, = value beyond; completely multiplicative.
MultiplicativeSpec mult_threshold(uint64_t y, std::complex<double> value);

// Parse `{"preset":"liouville"}`, `{"preset":"nt_power","alpha":2.0}`,
// `{"preset":"random_in_region","region":{...},"seed":42}`, etc.
MultiplicativeSpec parse_multiplicative(const std::string& json_text);

// f(n) by smallest-prime-factor factorization.
std::complex<double> f_value(const MultiplicativeSpec& f, uint64_t n,
                             const SieveTable& sieve);

// S(c) = sum_{n<=c} f(n) at each checkpoint (ascending), fixed-order
// pairwise summation for bit-identical results.
std::vector<std::complex<double>> partial_sums(const MultiplicativeSpec& f,
                                               const SieveTable& sieve,
                                               const std::vector<uint64_t>& checkpoints);

// Euler-product mean value: prod_{p<=x} (1 + f(p)/p + f(p^2)/p^2 + ...)(1 - 1/p),
// per-prime series truncated once p^k > 1e30 or k > kmax.
std::complex<double> theta_product(const MultiplicativeSpec& f, uint64_t x,
                                   int kmax = 100);

// Truncated Euler product F(s) = prod_{p<=x} (1 + f(p)p^{-s} + ...), Re s >= 1.
std::complex<double> euler_F(const MultiplicativeSpec& f, uint64_t x,
                             std::complex<double> s, int kmax = 100);

// Twist-distance functionals over the prime sum and the product side:
//   M = min_{|y|<=2T} sum_{p<=x} (1 - Re f(p)p^{-iy})/p      at y_min,
//   L = (1/log x) max_{|y|<=2T} |F(1+iy)|                    at y0.
struct HalaszFunctionals {
    double M = 0.0, y_min = 0.0;
    double L = 0.0, y0 = 0.0;
    std::vector<double> y_grid;     // scan grid
    std::vector<double> M_vals;     // prime-sum functional on the grid
    std::vector<double> logF_vals;  // log|F(1+iy)| on the grid
};

// Grid scan at spacing min(0.01, 1/(4 log x)) with golden-section
// refinement; re-scans once at half spacing if refinement leaves the cell,
// then throws std::runtime_error.
HalaszFunctionals halasz_functionals(const MultiplicativeSpec& f,
                                     const SieveTable& sieve, double T);

// The prime-counting kernel of f above y, sampled as a piecewise-constant
// chi on a u-grid:
//   chi_f(v) = (1/theta(y^v)) sum_{p<=y^v} f(p) log p.
// pre: f(p) = 1 for p <= y (verified); y^u <= sieve.limit.
ChiSpec chi_from_f(const MultiplicativeSpec& f, uint64_t y,
                   const SieveTable& sieve, double u, double du = 1.0 / 64);

// Factor the mean of f through the completely multiplicative g that agrees
// with f on primes > y and is 1 below:
//   residual = |mean_f - theta_product(f,y) * mean_g|.
struct EulerSplit {
    std::complex<double> theta_y, mean_f, mean_g;
    double residual = 0.0;
};
EulerSplit euler_split(const MultiplicativeSpec& f, const SieveTable& sieve,
                       uint64_t y);

// Compare the twisted sum against the rotation of the plain sum:
//   lhs = sum f(n) n^{i alpha},  rhs = x^{i alpha}/(1+i alpha) * sum f(n),
//   residual = |lhs - rhs| / x.
struct TwistShift {
    std::complex<double> lhs, rhs;
    double residual = 0.0;
};
TwistShift twist_shift(const MultiplicativeSpec& f, const SieveTable& sieve,
                       double alpha);

} // namespace mvdecay
