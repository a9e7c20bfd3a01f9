#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "dampresp/errors.hpp"
#include "dampresp/twolevel.hpp"
#include "oracles.hpp"

using namespace dampresp;
using cplx = std::complex<double>;

namespace {
const BathSpectrum ohmic = BathSpectrum::ohmic(0.1, 5.0);
const cplx I{0.0, 1.0};
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("amplitudes without a bath")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const auto null = BathSpectrum::null();
    // i G0 / (i (w0 -+ w))
    CHECK(rel(amplitude_rotating(p, null, 0.5).value, cplx(2.0, 0.0)) < 1e-15);
    CHECK(rel(amplitude_counter(p, null, 0.5).value, cplx(2.0 / 3.0, 0.0)) < 1e-15);
    // Two-level polarizability 2 w0 / (w0^2 - w^2).
    CHECK(rel(polarization_amplitude(p, null, 0.5), cplx(8.0 / 3.0, 0.0)) < 1e-15);
    CHECK(rel(polarization_amplitude(p, null, 0.5), cplx(2.0 * 1.0 / (1.0 - 0.25), 0.0)) < 1e-15);
}

TEST_CASE("rotating amplitude with the ohmic bath")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const Amplitude a = amplitude_rotating(p, ohmic, 1.0);
    const double gamma = oracle::pi * 0.1 * std::exp(-0.2);
    const double shift = oracle::ohmic_rotating_shift(0.1, 5.0, 1.0);
    CHECK(a.denominator.absorptive == doctest::Approx(0.25723).epsilon(2e-5));
    CHECK(a.denominator.absorptive == doctest::Approx(gamma).epsilon(1e-14));
    CHECK(std::abs(a.denominator.dispersive.imag() + shift) < 1e-8 * std::abs(shift));
    CHECK(rel(a.value, I / cplx(gamma, -shift)) < 1e-8);
}

TEST_CASE("zero drive gives zero amplitudes")
{
    const TwoLevelParams p{1.0, {0.0, 0.0}, {1.0, 0.0}};
    CHECK(amplitude_rotating(p, ohmic, 0.7).value == cplx{});
    CHECK(amplitude_counter(p, ohmic, 0.7).value == cplx{});
    CHECK(polarization_amplitude(p, ohmic, 0.7) == cplx{});
}

TEST_CASE("counter-rotating denominator has no absorptive part")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const Amplitude m = amplitude_counter(p, ohmic, 0.5);
    CHECK(m.denominator.absorptive == 0.0);
    CHECK(m.denominator.total().real() == 0.0);
    const double shift = oracle::ohmic_kernel_real(0.1, 5.0, 0.5) - oracle::ohmic_rotating_shift(0.1, 5.0, 0.5);
    CHECK(m.denominator.dispersive.imag() == doctest::Approx(-shift).epsilon(1e-8));
}

TEST_CASE("property: counter-rotating absorptive part vanishes for every bath, scale and frequency")
{
    const TwoLevelParams p{1.3, {0.4, -0.2}, {1.0, 0.5}};
    const std::vector<BathSpectrum> baths{ohmic, BathSpectrum::lorentzian(1.0, 0.3, 0.5),
                                          BathSpectrum::lorentzian(0.2, 1.0, 2.0), BathSpectrum::null(),
                                          BathSpectrum::discrete({{0.7, 0.1}, {2.0, 0.3}})};
    for (const auto& b : baths) {
        for (double s : {0.5, 1.0, 2.0}) {
            for (double w : {0.0, 0.3, 1.0, 1.3, 4.0}) {
                // int J(x)/x diverges when J(0) > 0
                if (w == 0.0 && b.is_continuum() && b.density(0.0) > 0.0) {
                    CHECK_THROWS_AS(amplitude_counter(p, b.scaled(s), w), DivergenceError);
                    continue;
                }
                const Amplitude m = amplitude_counter(p, b.scaled(s), w);
                CHECK(m.denominator.total().real() == 0.0);
            }
        }
    }
}

TEST_CASE("property: static drive with J(0) = 0 has no absorption in either amplitude")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const Amplitude plus = amplitude_rotating(p, ohmic, 0.0);
    const Amplitude minus = amplitude_counter(p, ohmic, 0.0);
    CHECK(plus.denominator.absorptive == 0.0);
    CHECK(plus.denominator.total().real() == 0.0);
    CHECK(minus.denominator.total().real() == 0.0);
    // p0 is then real for real G0 and d.
    CHECK(polarization_amplitude(p, ohmic, 0.0).imag() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("property: amplitudes are linear in the drive")
{
    const TwoLevelParams p{1.0, {0.3, 0.7}, {1.0, 0.0}};
    TwoLevelParams p2 = p;
    p2.drive *= 2.0;
    for (double w : {0.2, 0.9, 1.5}) {
        CHECK(rel(amplitude_rotating(p2, ohmic, w).value, 2.0 * amplitude_rotating(p, ohmic, w).value) < 1e-15);
        CHECK(rel(amplitude_counter(p2, ohmic, w).value, 2.0 * amplitude_counter(p, ohmic, w).value) < 1e-15);
    }
}

TEST_CASE("property: resonance reduction w -> w0 in the absorptive part")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const double g0 = kernel_imag(ohmic, 1.0);
    for (double w = 0.98; w <= 1.02 + 1e-12; w += 0.005) {
        const Amplitude a = amplitude_rotating(p, ohmic, w);
        Denominator frozen = a.denominator;
        frozen.absorptive = g0;
        const double exact = std::abs(a.value);
        const double approx = std::abs(I * p.drive / frozen.total());
        CHECK(std::abs(approx - exact) / exact < 0.05);
    }
}

TEST_CASE("damping_sensitivity")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const auto rows0 = damping_sensitivity(p, ohmic, 0.6, {0.0});
    CHECK(rows0[0].abs_plus == doctest::Approx(std::abs(amplitude_rotating(p, BathSpectrum::null(), 0.6).value)));
    CHECK(rows0[0].abs_minus == doctest::Approx(std::abs(amplitude_counter(p, BathSpectrum::null(), 0.6).value)));

    const auto rows = damping_sensitivity(p, ohmic, 1.0, {0.5, 1.0, 2.0});
    const double g = kernel_imag(ohmic, 1.0);
    for (const auto& r : rows) {
        CHECK(r.absorptive_minus == 0.0);
        CHECK(r.absorptive_plus == doctest::Approx(r.scale * g).epsilon(1e-15));
    }
}

TEST_CASE("simulate_coherence: null bath")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    TimeDomainOptions o;
    o.dt = two_pi / 48.0;
    o.t_max = 300.0;
    const CoherenceRun run = simulate_coherence(p, BathSpectrum::null(), 0.5, o);
    CHECK(rel(run.fit.plus, cplx(2.0, 0.0)) < 0.01);
    CHECK(rel(run.fit.minus, cplx(2.0 / 3.0, 0.0)) < 0.01);

    TwoLevelParams zero = p;
    zero.drive = {};
    const CoherenceRun z = simulate_coherence(zero, BathSpectrum::null(), 0.5, o);
    for (const auto& v : z.trajectory.values) CHECK(v == cplx{});
}

TEST_CASE("simulate_coherence: sampled ohmic bath matches the long-time amplitudes")
{
    const TwoLevelParams p{1.0, {1.0, 0.0}, {1.0, 0.0}};
    const BathSpectrum weak = BathSpectrum::ohmic(0.05, 5.0);
    const auto disc = discretize(weak, 60.0, 3000);
    TimeDomainOptions o;
    o.dt = two_pi / (48.0 * 60.0);
    o.t_max = 150.0;
    const CoherenceRun run = simulate_coherence(p, disc, 0.95, o);
    CHECK(rel(run.fit.plus, amplitude_rotating(p, weak, 0.95).value) < 0.02);
    CHECK(rel(run.fit.minus, amplitude_counter(p, weak, 0.95).value) < 0.02);
    CHECK(run.trajectory.values.front() == cplx{});
}

TEST_CASE("simulate_coherence rejects continuum baths")
{
    TimeDomainOptions o;
    o.dt = 0.01;
    o.t_max = 200.0;
    CHECK_THROWS_AS(simulate_coherence({1.0, {1.0, 0.0}, {1.0, 0.0}}, ohmic, 0.5, o), InvalidArgument);
}
