#pragma once

// First-order coherence of a two-level atom driven by
// G(t) = G0 exp(-iwt) + c.c. and radiatively coupled to a bath:
//
//     psi_e' = -i w0 psi_e + i G(t) - sum_k |g_k|^2 int_0^t exp(-i w_k (t-s)) psi_e(s) ds,
//
// from psi_e(0) = 0. In the long-time limit
// psi_e -> psi_plus exp(-iwt) + psi_minus exp(+iwt) with
//
//     psi_plus  = i G0       / ( i(w0 - w) + sum_k |g_k|^2 / (i(w_k - w)) )
//     psi_minus = i conj(G0) / ( i(w0 + w) + sum_k |g_k|^2 / (i(w_k + w)) ).
//
// The factor i is the one carried by the drive term of the equation of
// motion. Without a bath it gives p0 = 2 w0 |d|^2 G0 / (w0^2 - w^2) for
// real G0 and d, the usual two-level polarizability.
//
// For a continuum bath the first denominator becomes
// i(w0 - w) + pi J(w) - i P int J(x)/(x - w) dx; the second has no delta
// support (w_k + w > 0), so its real (absorptive) part is identically 0.

#include <complex>
#include <vector>

#include "dampresp/oscillator.hpp"
#include "dampresp/spectra.hpp"
#include "dampresp/timeseries.hpp"

namespace dampresp {

struct TwoLevelParams {
    double omega0 = 1.0;
    std::complex<double> drive{1.0, 0.0};   // G0
    std::complex<double> dipole{1.0, 0.0};  // d_eg (scalar)
};

void validate(const TwoLevelParams& params);

// Denominator D = detuning + absorptive + dispersive, with
// detuning = i(w0 -/+ w), absorptive real, dispersive purely imaginary.
struct Denominator {
    std::complex<double> detuning;
    double absorptive = 0.0;
    std::complex<double> dispersive;

    std::complex<double> total() const { return detuning + absorptive + dispersive; }
};

struct Amplitude {
    std::complex<double> value;
    Denominator denominator;
};

Amplitude amplitude_rotating(const TwoLevelParams& params, const BathSpectrum& bath, double omega,
                             const KernelOptions& opts = {});

Amplitude amplitude_counter(const TwoLevelParams& params, const BathSpectrum& bath, double omega,
                            const KernelOptions& opts = {});

// Induced polarization p0 in p(t) = p0 exp(-iwt) + c.c.:
// p0 = psi_plus conj(d_eg) + conj(psi_minus) d_eg.
std::complex<double> polarization_amplitude(const TwoLevelParams& params, const BathSpectrum& bath,
                                            double omega, const KernelOptions& opts = {});

struct CoherenceRun {
    ComplexSeries trajectory;  // psi_e^(1)(t)
    TwoToneFit fit;
};

// RK4 on the first-order equation with one auxiliary variable per mode,
// c_k = int exp(-i w_k (t-s)) psi_e(s) ds, c_k' = -i w_k c_k + psi_e.
// With a null bath the undamped free tone at w0 is fitted and discarded.
// Throws ConvergenceError when the fit residual exceeds opts.max_residual.
CoherenceRun simulate_coherence(const TwoLevelParams& params, const BathSpectrum& bath, double omega,
                                const TimeDomainOptions& opts);

struct SensitivityRow {
    double scale = 0.0;
    double abs_plus = 0.0;
    double abs_minus = 0.0;
    double absorptive_plus = 0.0;
    double absorptive_minus = 0.0;
};

// Both amplitudes with every bath weight multiplied by each scale s >= 0.
std::vector<SensitivityRow> damping_sensitivity(const TwoLevelParams& params, const BathSpectrum& bath,
                                                double omega, const std::vector<double>& scales,
                                                const KernelOptions& opts = {});

}  // namespace dampresp
