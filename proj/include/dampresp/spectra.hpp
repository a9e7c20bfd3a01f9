#pragma once

// Bath coupling spectra and the memory-kernel function
//
//     K(w) = K'(w) + i K''(w)
//
// of a system linearly coupled to a bath of harmonic modes (hbar = 1).
// A discrete bath is a list of modes (w_j > 0, |g_j|^2 >= 0); a continuum
// bath is a spectral density J(w) >= 0 on w >= 0, the densification of
// sum_j |g_j|^2 delta(w - w_j).
//
// Taking the eps -> 0 limit of
//
//     K(w) = sum_j |g_j|^2 i { 1/(eps + i(w_j - w)) - 1/(eps - i(w_j + w)) }
//
// term by term gives, with w >= 0 and w_j > 0,
//
//     K'(w)  = sum_j |g_j|^2 [ P 1/(w_j - w) + 1/(w_j + w) ]
//     K''(w) = pi sum_j |g_j|^2 delta(w_j - w)          (= pi J(w))
//
// The first piece of K' is the rotating (Lamb-type) shift, the second the
// counter-rotating shift; they are exposed separately because the
// two-level amplitudes use them individually.

#include <span>
#include <string>
#include <vector>

namespace dampresp {

enum class BathKind { Discrete, OhmicExpCutoff, LorentzianPeak, Null };

std::string to_string(BathKind kind);

struct BathMode {
    double frequency = 0.0;  // w_j > 0
    double weight = 0.0;     // |g_j|^2 >= 0
};

// Union of the parameters of every bath family. Only the fields relevant
// to the chosen kind are read by make_bath.
struct BathParameters {
    double eta = 0.0;       // OhmicExpCutoff: J(w) = eta w exp(-w / cutoff)
    double cutoff = 1.0;    // OhmicExpCutoff
    double center = 1.0;    // LorentzianPeak: J(w) = (s/pi) width / ((w - center)^2 + width^2)
    double width = 1.0;     // LorentzianPeak
    double strength = 0.0;  // LorentzianPeak s
    std::vector<BathMode> modes;  // Discrete
};

class BathSpectrum {
public:
    static BathSpectrum null();
    static BathSpectrum ohmic(double eta, double cutoff);
    static BathSpectrum lorentzian(double center, double width, double strength);
    static BathSpectrum discrete(std::vector<BathMode> modes);

    BathKind kind() const noexcept { return kind_; }
    bool is_continuum() const noexcept { return kind_ != BathKind::Discrete; }

    // J(w) for continuum kinds; 0 for w < 0. Throws UnsupportedEvaluation
    // for Discrete.
    double density(double omega) const;

    std::span<const BathMode> modes() const noexcept { return modes_; }
    const BathParameters& parameters() const noexcept { return params_; }

    // Same family with every coupling weight multiplied by s >= 0.
    BathSpectrum scaled(double s) const;

    // Upper limit used for continuum quadratures (+inf for Lorentzian).
    double integration_limit(double omega) const;

private:
    friend BathSpectrum make_bath(BathKind kind, const BathParameters& params);
    BathSpectrum(BathKind kind, BathParameters params);

    BathKind kind_ = BathKind::Null;
    BathParameters params_;
    std::vector<BathMode> modes_;
};

// Validating constructor; throws InvalidArgument naming the offending field.
BathSpectrum make_bath(BathKind kind, const BathParameters& params);

struct KernelOptions {
    double rel_tol = 1e-8;          // principal-value quadrature tolerance
    double pole_tolerance = 1e-8;   // discrete: minimum |w - w_j|
    double window_fraction = 0.5;   // PV window half-width = fraction * min(w, scale)
};

struct KernelValue {
    double omega = 0.0;
    double real_part = 0.0;  // K'(w)
    double imag_part = 0.0;  // K''(w)
};

// K''(w) = pi J(w). Continuum kinds only: for a discrete bath K'' is a
// distribution and pointwise evaluation throws UnsupportedEvaluation.
double kernel_imag(const BathSpectrum& bath, double omega);

// K'(w) = rotating_shift + counter_shift.
double kernel_real(const BathSpectrum& bath, double omega, const KernelOptions& opts = {});

KernelValue kernel(const BathSpectrum& bath, double omega, const KernelOptions& opts = {});

// P int J(x) / (x - w) dx, or sum_j |g_j|^2 / (w_j - w) off-pole.
double rotating_shift(const BathSpectrum& bath, double omega, const KernelOptions& opts = {});

// int J(x) / (x + w) dx, or sum_j |g_j|^2 / (w_j + w). Regular for w > 0.
double counter_shift(const BathSpectrum& bath, double omega, const KernelOptions& opts = {});

// Midpoint sampling of a continuum bath on (0, omega_max]: modes at
// (k + 1/2) dw with weights J(w_k) dw, dw = omega_max / n_modes.
BathSpectrum discretize(const BathSpectrum& bath, double omega_max, std::size_t n_modes);

// Real time-domain memory kernel K(t) = 2 sum_j |g_j|^2 sin(w_j t), the
// combination of the two conjugate terms of i sum_j |g_j|^2 exp(-i w_j t) + c.c.
// Discrete and Null baths, plus the ohmic closed form
// K(t) = 4 eta a t / (a^2 + t^2)^2 with a = 1 / cutoff.
double memory_kernel(const BathSpectrum& bath, double t);

}  // namespace dampresp
