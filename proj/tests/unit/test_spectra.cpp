#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dampresp/errors.hpp"
#include "dampresp/spectra.hpp"
#include "oracles.hpp"

using namespace dampresp;

namespace {
const BathSpectrum ohmic = BathSpectrum::ohmic(0.1, 5.0);
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("make_bath builds each family and rejects bad parameters")
{
    CHECK(make_bath(BathKind::Null, {}).density(3.0) == 0.0);

    BathParameters p;
    p.eta = 0.1;
    p.cutoff = 5.0;
    CHECK(make_bath(BathKind::OhmicExpCutoff, p).density(1.0) == doctest::Approx(0.1 * std::exp(-0.2)).epsilon(1e-15));

    BathParameters bad;
    bad.modes = {{-1.0, 0.5}};
    CHECK_THROWS_AS(make_bath(BathKind::Discrete, bad), InvalidArgument);
    bad.modes = {{1.0, -0.5}};
    CHECK_THROWS_AS(make_bath(BathKind::Discrete, bad), InvalidArgument);

    BathParameters lor;
    lor.center = 1.0;
    lor.width = 0.0;
    CHECK_THROWS_AS(make_bath(BathKind::LorentzianPeak, lor), InvalidArgument);
    p.cutoff = 0.0;
    CHECK_THROWS_AS(make_bath(BathKind::OhmicExpCutoff, p), InvalidArgument);
}

TEST_CASE("kernel_imag")
{
    CHECK(kernel_imag(ohmic, 0.0) == 0.0);
    CHECK(kernel_imag(BathSpectrum::null(), 2.5) == 0.0);

    // Riemann sum of narrow Gaussian-broadened deltas, refined.
    auto J = [](double x) { return 0.1 * x * std::exp(-x / 5.0); };
    double prev = 0.0;
    for (double sigma : {0.02, 0.01, 0.005}) {
        prev = oracle::broadened_delta_sum(J, 1.0, sigma, sigma / 20.0, 60.0);
    }
    CHECK(rel(kernel_imag(ohmic, 1.0), prev) < 1e-4);
    CHECK(kernel_imag(ohmic, 1.0) == doctest::Approx(0.25721185).epsilon(1e-7));

    BathParameters d;
    d.modes = {{1.0, 0.3}};
    CHECK_THROWS_AS(kernel_imag(BathSpectrum::discrete(d.modes), 1.0), UnsupportedEvaluation);
}

TEST_CASE("kernel_real on closed-form and arithmetic oracles")
{
    CHECK(kernel_real(ohmic, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kernel_real(BathSpectrum::null(), 1.7) == 0.0);

    const auto single = BathSpectrum::discrete({{2.0, 0.5}});
    CHECK(kernel_real(single, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(kernel_real(single, 2.0), PoleError);

    for (double w : {0.05, 0.3, 0.9999, 1.0, 2.5, 5.0, 17.0, 60.0}) {
        CAPTURE(w);
        CHECK(rel(kernel_real(ohmic, w), oracle::ohmic_kernel_real(0.1, 5.0, w)) < 1e-8);
        CHECK(rel(rotating_shift(ohmic, w), oracle::ohmic_rotating_shift(0.1, 5.0, w)) < 1e-8);
    }
}

TEST_CASE("rotating shift for a Lorentzian against its closed form")
{
    const auto lor = BathSpectrum::lorentzian(1.0, 0.2, 0.3);
    // 1.0 sits on the peak centre, where the folded window integrand cancels
    for (double w : {0.05, 0.4, 0.97, 1.0, 1.3, 4.0, 25.0}) {
        CAPTURE(w);
        CHECK(rel(rotating_shift(lor, w), oracle::lorentzian_rotating_shift(1.0, 0.2, 0.3, w)) < 1e-7);
    }
    // symmetric-node midpoint sum as a second, cruder check
    auto J = [](double x) { return x < 0.0 ? 0.0 : (0.3 / oracle::pi) * 0.2 / ((x - 1.0) * (x - 1.0) + 0.04); };
    const double L = 400.0;
    const double tail = (0.3 * 0.2 / oracle::pi) / (2.0 * L * L);
    CHECK(rel(rotating_shift(lor, 1.3), oracle::pv_symmetric_sum(J, 1.3, 1e-3, L) + tail) < 1e-4);
    CHECK(kernel_imag(lor, 0.0) > 0.0);
}

TEST_CASE("kernel composes both parts")
{
    const KernelValue k0 = kernel(ohmic, 0.0);
    CHECK(k0.real_part == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k0.imag_part == 0.0);
    const KernelValue k1 = kernel(ohmic, 1.0);
    CHECK(k1.real_part == doctest::Approx(0.9179451918).epsilon(1e-9));
    CHECK(k1.imag_part == doctest::Approx(0.2572118519).epsilon(1e-9));
    const KernelValue kn = kernel(BathSpectrum::null(), 3.0);
    CHECK(kn.real_part == 0.0);
    CHECK(kn.imag_part == 0.0);
}

TEST_CASE("property: kernel_imag is nonnegative on a grid")
{
    const auto lor = BathSpectrum::lorentzian(2.0, 0.5, 1.0);
    for (int i = 0; i <= 400; ++i) {
        const double w = 0.05 * i;
        CHECK(kernel_imag(ohmic, w) >= 0.0);
        CHECK(kernel_imag(lor, w) >= 0.0);
    }
}

TEST_CASE("property: discretized bath reproduces the continuum K' away from poles")
{
    const auto disc = discretize(ohmic, 60.0, 3000);
    // w between two nodes of the midpoint grid (nodes at odd multiples of 0.01)
    for (double w : {0.5, 1.0, 2.0, 3.5}) {
        CAPTURE(w);
        CHECK(rel(kernel_real(disc, w), kernel_real(ohmic, w)) < 1e-3);
    }
}

TEST_CASE("property: discrete K' is invariant under mode permutation")
{
    std::vector<BathMode> modes;
    for (int j = 0; j < 50; ++j) modes.push_back({0.3 + 0.17 * j, 0.01 + 0.003 * j});
    const double ref = kernel_real(BathSpectrum::discrete(modes), 1.234);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(modes.begin(), modes.end(), rng);
        CHECK(kernel_real(BathSpectrum::discrete(modes), 1.234) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("scaled multiplies every weight")
{
    CHECK(kernel_imag(ohmic.scaled(2.0), 1.0) == doctest::Approx(2.0 * kernel_imag(ohmic, 1.0)).epsilon(1e-15));
    CHECK(kernel_real(ohmic.scaled(0.0), 1.0) == 0.0);
}

TEST_CASE("memory kernel: two modes by hand")
{
    const auto two = BathSpectrum::discrete({{1.0, 0.2}, {3.0, 0.05}});
    // 2 (0.2 sin t + 0.05 sin 3t) at t = 0.7
    const double expected = 2.0 * (0.2 * std::sin(0.7) + 0.05 * std::sin(2.1));
    CHECK(memory_kernel(two, 0.7) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(memory_kernel(two, 0.0) == 0.0);

    // Its one-sided Fourier transform int_0^inf K(t) e^{iwt} dt is K'(w) off
    // the mode frequencies: for one mode 2 g^2 w_j / (w_j^2 - w^2).
    const double w = 2.0;
    CHECK(kernel_real(two, w) == doctest::Approx(2.0 * 0.2 * 1.0 / (1.0 - 4.0) + 2.0 * 0.05 * 3.0 / (9.0 - 4.0)).epsilon(1e-14));

    // Ohmic closed form against the frequency integral 2 int J(x) sin(xt) dx.
    for (double t : {0.1, 0.5, 2.0}) {
        const double direct = oracle::simpson([&](double x) { return 2.0 * 0.1 * x * std::exp(-x / 5.0) * std::sin(x * t); },
                                              0.0, 300.0, 200000);
        CHECK(memory_kernel(ohmic, t) == doctest::Approx(direct).epsilon(1e-8));
    }
}
