#pragma once

// Collisional dephasing of an optical coherence,
//
//     sigma' = -i Delta sigma - i f(t) sigma + i G,
//
// with f(t) a stationary Gaussian process, <f> = 0 and
// <f(t) f(s)> = f0^2 exp(-Gamma |t - s|). The ensemble-averaged steady
// state is the Kubo integral
//
//     <sigma> = i G int_0^inf exp(-i Delta t) C(t) dt,
//     C(t)    = exp(-(f0^2 / Gamma^2) (Gamma t - 1 + exp(-Gamma t))),
//
// which tends to i G / (f0^2/Gamma + i Delta) for Gamma >> f0 (motional
// narrowing) and to i G int exp(-i Delta t - f0^2 t^2 / 2) dt for
// Gamma << f0 (static Gaussian limit).

#include <complex>
#include <cstddef>
#include <cstdint>

#include "dampresp/timeseries.hpp"

namespace dampresp {

struct DephasingParams {
    double f0 = 0.0;     // noise strength, >= 0
    double gamma = 1.0;  // inverse correlation time, > 0
    double delta = 0.0;  // detuning
    std::complex<double> drive{1.0, 0.0};  // G
};

void validate(const DephasingParams& params);

// Stationary Gauss-Markov path f_0..f_{n-1} on a grid of step dt:
// f_0 ~ N(0, f0^2), f_{k+1} = f_k e^{-Gamma dt} + f0 sqrt(1 - e^{-2 Gamma dt}) xi_k.
RealSeries sample_noise_path(const DephasingParams& params, double dt, std::size_t n, std::uint64_t seed);

// log C(t), the log of the Kubo relaxation function.
double kubo_log_envelope(const DephasingParams& params, double t);

// Time at which C(t) = 1/e. Infinite when f0 = 0.
double coherence_time(const DephasingParams& params);

struct MonteCarloOptions {
    std::size_t trajectories = 10000;
    std::uint64_t seed = 0;
    double t_max = 0.0;           // 0: 10 coherence times
    double dt = 0.0;              // 0: 1 / (40 max(|Delta|, f0))
    unsigned threads = 1;         // scheduling only; never changes the result
    double drift_checkpoint = 0.8;  // steadiness compares t_max with this fraction of it
    double drift_sigmas = 4.0;
};

struct EnsembleEstimate {
    std::complex<double> mean;
    double se_real = 0.0;  // jackknife standard errors of each component
    double se_imag = 0.0;
    std::size_t trajectories = 0;
    std::uint64_t seed = 0;
    double t_max = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
};

// Monte Carlo estimate of the steady-state <sigma>. Each trajectory is the
// exact solution
//     sigma(t) = i G exp(-i theta(t)) int_0^t exp(i theta(s)) ds,
//     theta(t) = Delta t + int_0^t f,
// with (f, int f) advanced by the exact bivariate-Gaussian update of the
// integrated Ornstein-Uhlenbeck process and the time integral taken with
// exp(i Delta s) exact and exp(i int f) linear between grid points.
// Trajectory k draws from its own engine seeded by (seed, k), so the
// estimate does not depend on `threads`.
EnsembleEstimate mc_coherence(const DephasingParams& params, const MonteCarloOptions& opts);

struct KuboOptions {
    double rel_tol = 1e-10;
    double envelope_floor = 1e-16;  // integration stops where C(t) drops below this
};

std::complex<double> kubo_coherence(const DephasingParams& params, const KuboOptions& opts = {});

// i G / (f0^2/Gamma + i Delta).
std::complex<double> fast_modulation_coherence(const DephasingParams& params);

// sqrt(pi / (2 f^2)) exp(-w^2 / (2 f^2)), the real part of
// int_0^inf exp(-i w t - f^2 t^2 / 2) dt.
double static_gaussian_bracket(double omega, double f);

// The same real part by direct quadrature.
double static_gaussian_bracket_quadrature(double omega, double f, double rel_tol = 1e-10);

}  // namespace dampresp
