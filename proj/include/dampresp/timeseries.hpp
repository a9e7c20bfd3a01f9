#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dampresp {

// Uniformly sampled trajectory t_k = t0 + k dt with provenance metadata
// (solver name, step, tolerances, seed when stochastic).
template <typename T>
struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<T> values;
    std::map<std::string, std::string> metadata;

    std::size_t size() const noexcept { return values.size(); }
    double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
};

using RealSeries = TimeSeries<double>;
using ComplexSeries = TimeSeries<std::complex<double>>;

// Least-squares fit of x(t) ~ a exp(-i w t) + c.c. over the final
// `window` fraction of a real series. For w = 0 the model degenerates to a
// constant 2a and the returned amplitude is real.
struct HarmonicFit {
    std::complex<double> amplitude;
    double residual = 0.0;  // rms(misfit) / rms(data) over the window
};

HarmonicFit fit_real_harmonic(const RealSeries& series, double omega, double window = 0.25);

// Least-squares fit of psi(t) ~ A exp(-i w t) + B exp(+i w t) over the
// final `window` fraction of a complex series. At w = 0 the two tones
// coincide: `merged` is set, A holds the fitted constant and B is zero.
struct TwoToneFit {
    std::complex<double> plus;
    std::complex<double> minus;
    double residual = 0.0;
    bool merged = false;
};

// `nuisance` lists further frequencies fitted alongside and discarded, e.g.
// an undamped free oscillation that never dies out.
TwoToneFit fit_two_tone(const ComplexSeries& series, double omega, double window = 0.25,
                        std::span<const double> nuisance = {});

// General least-squares fit psi(t) ~ sum_a c_a exp(-i f_a t) over the final
// `window` fraction.
struct ToneFit {
    std::vector<std::complex<double>> coefficients;
    double residual = 0.0;
};
ToneFit fit_tones(const ComplexSeries& series, std::span<const double> freqs, double window = 0.25);

}  // namespace dampresp
