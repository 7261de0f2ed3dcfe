#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "mvdecay/chi.hpp"
#include "mvdecay/volterra.hpp"

using namespace mvdecay;
using cplx = std::complex<double>;

TEST_CASE("identity kernel is reproduced exactly") {
    const auto sol = solve_sigma(chi_all_one(), 10.0, 1.0 / 64, false);
    for (const auto& v : sol.values) CHECK(v == cplx(1.0));
}

TEST_CASE("indicator kernel hits the classical smooth-density values") {
    const auto sol = solve_sigma(chi_indicator_01(), 3.0, 1.0 / 1024);
    CHECK(std::abs(sol.at(2.0) - (1.0 - std::log(2.0))) <= 1e-6);
    CHECK(std::abs(sol.at(3.0) - 0.0486083883) <= 1e-6);
    CHECK(sol.est_error <= 1e-6);
}

TEST_CASE("solutions start at 1 and stay inside the unit disc") {
    for (const auto& chi :
         {chi_indicator_01(), chi_rho_step(cplx(0, 1)), chi_rotation(1.5),
          chi_random_in_region(make_disc(0.7), 11, 6, 8.0)}) {
        const auto sol = solve_sigma(chi, 12.0, 1.0 / 256, false);
        CHECK(sol.at(0.0) == cplx(1.0));
        CHECK(sol.at(0.99) == cplx(1.0));
        double worst = 0.0;
        for (const auto& v : sol.values) worst = std::max(worst, std::abs(v));
        CHECK(worst <= 1.0 + 1e-9);
    }
}

TEST_CASE("marching is second order in the step") {
    const auto coarse = solve_sigma(chi_indicator_01(), 4.0, 1.0 / 256);
    const auto fine = solve_sigma(chi_indicator_01(), 4.0, 1.0 / 512);
    CHECK(fine.est_error < coarse.est_error);
    // halving the step cuts the Richardson estimate by about 4
    CHECK(coarse.est_error / fine.est_error == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("integrated delay equation agrees with the direct ODE integrator") {
    const cplx alpha(0, 1);
    const auto marched = solve_sigma(chi_rho_step(alpha), 8.0, 1.0 / 1024, false);
    const auto ode = rho_alpha(alpha, 8.0, 1.0 / 64, false);
    for (double u : {2.0, 5.0, 8.0})
        CHECK(std::abs(marched.at(u) - ode.at(u)) <= 1e-6);
}

TEST_CASE("series oracle matches the marching solver off the easy path") {
    const auto chi = chi_random_in_region(make_roots_of_unity(3), 5, 6, 5.0);
    const auto sol = solve_sigma(chi, 5.0, 1.0 / 1024, false);
    for (double u : {2.0, 3.5, 5.0})
        CHECK(std::abs(sol.at(u) - sigma_series_oracle(chi, u)) <= 1e-4);
    CHECK_THROWS_AS(sigma_series_oracle(chi, 6.5), std::invalid_argument);
}

TEST_CASE("grid accessors interpolate and validate") {
    const auto sol = solve_sigma(chi_indicator_01(), 2.0, 1.0 / 64, false);
    CHECK(sol.index_of(1.0) == 64);
    CHECK(sol.at_grid(64) == sol.at(1.0));
    const cplx mid = sol.at(1.0 + 0.5 / 64);
    CHECK(std::abs(mid - 0.5 * (sol.at_grid(64) + sol.at_grid(65))) <= 1e-15);
    CHECK_THROWS_AS(sol.index_of(1.0 + 0.3 / 64), std::invalid_argument);
}

TEST_CASE("preconditions are enforced") {
    CHECK_THROWS_AS(solve_sigma(chi_all_one(), 4.0, 1.0 / 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_sigma(chi_all_one(), 0.5, 1.0 / 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_sigma(chi_all_one(), 4.0 + 0.3 / 64, 1.0 / 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(rho_alpha(cplx(1.5, 0), 4.0, 1.0 / 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(tail_aligned_pair(4.0), std::invalid_argument);
    CHECK_THROWS_AS(rotation_tail_max(1.0, 20.0), std::invalid_argument);
}

TEST_CASE("trapezoidal transform matches a closed form") {
    const double h = 1.0 / 512, U = 20.0;
    std::vector<cplx> f(size_t(U / h) + 1);
    for (size_t k = 0; k < f.size(); ++k) f[k] = std::exp(-double(k) * h);
    const auto r = laplace(f, h, cplx(1.0, 0.0));
    // integral_0^U e^{-2t} dt
    const double exact = 0.5 * (1.0 - std::exp(-2.0 * U));
    CHECK(std::abs(r.value - exact) <= 1e-6);
    CHECK(r.tail_estimate == doctest::Approx(std::exp(-2.0 * U)).epsilon(1e-9));
}

TEST_CASE("tail-aligned pair realizes its defining identity") {
    const auto pr = tail_aligned_pair(20.0);
    CHECK(pr.lhs.real() > 0.0);
    CHECK(std::abs(pr.lhs.imag()) <= 1e-4);
    CHECK(std::abs(pr.lhs.real() - pr.mid) <= 1e-4);
    CHECK(pr.lhs.real() >= pr.rhs - 1e-9);
    CHECK(pr.rhs > 0.0);
}

TEST_CASE("pure twist does not decay") {
    const double m = rotation_tail_max(1.0, 60.0);
    // |sigma| tends to 1/|1+i| for this kernel
    CHECK(m > 0.6);
    CHECK(m < 0.8);
}

TEST_CASE("modulus-continuity diagnostic stays bounded") {
    const auto sol = solve_sigma(chi_indicator_01(), 10.0, 1.0 / 256, false);
    const double ratio = lipschitz_ratio(sol);
    CHECK(ratio > 0.0);
    CHECK(ratio <= 5.0);
}
