#pragma once

// Driven harmonic oscillator coupled to a bath, expectation-value dynamics
//
//     m x'' = -m w0^2 x - m Gamma x' + e E(t) + int_0^t K(t - s) x(s) ds,
//     E(t)  = E0 exp(-i w t) + c.c.,
//
// with the bath noise dropped because its mean vanishes. In steady state
// e x(t) = chi(w) E0 exp(-i w t) + c.c. with
//
//     chi_phenomenological(w) = e^2 / (m (w0^2 - w^2 - i w Gamma))
//     chi_exact(w)            = e^2 / (m (w0^2 - w^2) - K(w)).

#include <complex>

#include "dampresp/spectra.hpp"
#include "dampresp/timeseries.hpp"

namespace dampresp {

struct OscillatorParams {
    double mass = 1.0;
    double charge = 1.0;
    double omega0 = 1.0;
    double damping = 0.0;  // phenomenological Gamma; ignored by chi_exact
};

struct DriveField {
    double omega = 0.0;                      // >= 0; 0 is the static field
    std::complex<double> amplitude{1.0, 0.0};
};

void validate(const OscillatorParams& params);

std::complex<double> chi_phenomenological(const OscillatorParams& params, double omega);

std::complex<double> chi_exact(const OscillatorParams& params, const BathSpectrum& bath, double omega,
                               const KernelOptions& opts = {});

// Phenomenological model matched to the bath at its line center.
// `observed.omega0` is the physical resonance w_r. The bare frequency that
// puts the exact model's resonance there absorbs the dispersive shift,
// w_b^2 = w_r^2 + K'(w_r)/m, and the damping constant is
// Gamma = K''(w_r) / (m w_r).
struct ResonanceMatch {
    OscillatorParams bare;              // for chi_exact
    OscillatorParams phenomenological;  // for chi_phenomenological
    KernelValue kernel_at_resonance;
};

ResonanceMatch match_at_resonance(const OscillatorParams& observed, const BathSpectrum& bath,
                                  const KernelOptions& opts = {});

struct TimeDomainOptions {
    double t_max = 0.0;
    double dt = 0.0;
    double fit_window = 0.25;       // trailing fraction used for the harmonic fit
    double max_residual = 1e-2;     // relative rms misfit accepted as steady state
    double points_per_period = 40;  // of the fastest of {w, w0, max w_j}
    double min_slow_periods = 20;   // of the slowest nonzero of {w, w0}
};

struct OscillatorRun {
    RealSeries trajectory;             // <x>(t), starting from rest
    std::complex<double> amplitude;    // a in <x> ~ a exp(-iwt) + c.c.
    double residual = 0.0;
};

// Integrates the mean-value equation from x = p = 0 with RK4. The memory
// term of a discrete bath, int K(t-s) x(s) ds with K(t) = 2 sum |g_j|^2
// sin(w_j t), is carried exactly by two auxiliary variables per mode,
//     s_j = int sin(w_j (t-s)) x(s) ds,  q_j = int cos(w_j (t-s)) x(s) ds,
// obeying s_j' = w_j q_j, q_j' = -w_j s_j + x.
OscillatorRun simulate_time_domain(const OscillatorParams& params, const BathSpectrum& bath,
                                   const DriveField& field, const TimeDomainOptions& opts);

}  // namespace dampresp
