#pragma once

// Three-denominator contribution to the electro-optic susceptibility of a
// chiral isotropic medium,
//
//     X = 1/(w_mg + w + i g_mg) * [ 1/(w_ng - i g_ng) - 1/(w_ng + i g_ng) ]
//       = 2 i g_ng / ((w_ng - i g_ng)(w_ng + i g_ng)(w_mg + w + i g_mg)),
//
// under three treatments of the damping g:
//   - phenomenological: constant widths g_ng, g_mg;
//   - frequency dependent: g(nu) = pi J(nu) from a bath, with the bracket
//     (a static-field denominator) taking g_ng(0) and the optical factor
//     taking g_mg(w);
//   - collisional: the bracket replaced by
//     2 i sqrt(pi / (2 f^2)) exp(-w_ng^2 / (2 f^2)).
//
// The bracket equals 2i times Re int_0^inf exp(-i w_ng t - g_ng t) dt; the
// collisional form keeps that 2i so the constant-g limit reproduces the
// phenomenological value exactly.

#include <complex>

#include "dampresp/spectra.hpp"

namespace dampresp {

struct EoeLevelScheme {
    double omega_ng = 1.0;  // > 0
    double omega_mg = 2.0;
    double omega = 0.5;     // optical frequency, > 0
    double gamma_ng = 0.0;
    double gamma_mg = 0.0;
    double f_ng = 0.0;      // collisional strength
};

void validate(const EoeLevelScheme& scheme);

std::complex<double> x_phenomenological(const EoeLevelScheme& scheme);

// Single-fraction and two-term forms evaluated separately (used to verify
// the algebraic identity between them).
std::complex<double> x_single_fraction(const EoeLevelScheme& scheme);
std::complex<double> x_bracket_form(const EoeLevelScheme& scheme);

std::complex<double> x_frequency_dependent(const EoeLevelScheme& scheme, const BathSpectrum& bath);

std::complex<double> x_collisional(const EoeLevelScheme& scheme);

// Exponent w_ng^2 / (2 f^2) of the collisional suppression factor.
double suppression_exponent(double omega_ng, double f_ng);

struct EoeReport {
    std::complex<double> phenomenological;
    std::complex<double> frequency_dependent;
    std::complex<double> collisional;
    double suppression_exponent = 0.0;
    bool radiative_vanishes = false;      // frequency-dependent X is exactly 0
    bool collisional_negligible = false;  // |X_coll| < threshold |X_phenom|
};

constexpr double negligible_ratio = 1e-12;

// Side-by-side of the three treatments. f_ng = 0 means no collisions; the
// collisional X is then its f -> 0+ limit, 0.
EoeReport eoe_report(const EoeLevelScheme& scheme, const BathSpectrum& bath, double f_ng);

}  // namespace dampresp
