#include "dampresp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dampresp/errors.hpp"
#include "dampresp/quadrature.hpp"

namespace dampresp {

namespace {

constexpr double pi = std::numbers::pi;

// Ohmic integrals stop here; exp(-40) ~ 4e-18 of the peak.
constexpr double ohmic_limit_factor = 40.0;

void require(bool ok, const std::string& op, const std::string& what)
{
    if (!ok) throw InvalidArgument(op, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

// J(x)/x without the 0/0 at x = 0 for the ohmic family.
double density_over_x(const BathSpectrum& bath, double x)
{
    const auto& p = bath.parameters();
    if (bath.kind() == BathKind::OhmicExpCutoff) return p.eta * std::exp(-x / p.cutoff);
    return bath.density(x) / x;
}

double window_scale(const BathSpectrum& bath)
{
    const auto& p = bath.parameters();
    switch (bath.kind()) {
        case BathKind::OhmicExpCutoff: return p.cutoff;
        case BathKind::LorentzianPeak: return p.width;
        default: return std::numeric_limits<double>::infinity();
    }
}

// int_0^inf J(x)/(x + w) dx for a continuum bath, w >= 0.
double continuum_counter(const BathSpectrum& bath, double omega, const KernelOptions& opts,
                         const std::string& op)
{
    if (omega == 0.0 && bath.density(0.0) > 0.0) {
        throw DivergenceError(op, "int J(x)/x dx diverges at x = 0 because J(0) > 0",
                              std::numeric_limits<double>::infinity());
    }
    const double upper = bath.integration_limit(omega);
    auto f = [&](double x) {
        if (omega == 0.0) return density_over_x(bath, x);
        return bath.density(x) / (x + omega);
    };
    return quad::integrate(f, 0.0, upper, opts.rel_tol, op).value;
}

// P int_0^inf J(x)/(x - w) dx by singularity subtraction over a symmetric
// window [w - d, w + d]. Inside the window P int J(w)/(x - w) = 0, so only
// (J(x) - J(w))/(x - w) remains, folded onto u = |x - w|.
double continuum_rotating(const BathSpectrum& bath, double omega, const KernelOptions& opts,
                          const std::string& op)
{
    if (omega == 0.0) return continuum_counter(bath, 0.0, opts, op);

    const double upper = bath.integration_limit(omega);
    const double half = opts.window_fraction * std::min(omega, window_scale(bath));

    auto outside = [&](double x) { return bath.density(x) / (x - omega); };
    auto window = [&](double u) {
        return (bath.density(omega + u) - bath.density(omega - u)) / u;
    };

    const quad::Result left = quad::integrate(outside, 0.0, omega - half, opts.rel_tol, op);
    const quad::Result right = quad::integrate(outside, omega + half, upper, opts.rel_tol, op);
    // A peak centred on w makes the folded integrand cancel to rounding
    // noise, so its tolerance is tied to the size of the whole integral.
    const double scale = left.l1 + right.l1 + pi * bath.density(omega);
    const double mid = quad::integrate(window, 0.0, half, opts.rel_tol, op, opts.rel_tol * scale).value;
    return left.value + mid + right.value;
}

void require_frequency(double omega, const std::string& op)
{
    require(std::isfinite(omega) && omega >= 0.0, op, "frequency must be finite and >= 0");
}

}  // namespace

std::string to_string(BathKind kind)
{
    switch (kind) {
        case BathKind::Discrete: return "discrete";
        case BathKind::OhmicExpCutoff: return "ohmic";
        case BathKind::LorentzianPeak: return "lorentzian";
        case BathKind::Null: return "null";
    }
    return "unknown";
}

BathSpectrum::BathSpectrum(BathKind kind, BathParameters params)
    : kind_(kind), params_(std::move(params))
{
    if (kind_ == BathKind::Discrete) modes_ = params_.modes;
    params_.modes.clear();
}

BathSpectrum BathSpectrum::null() { return BathSpectrum(BathKind::Null, {}); }

BathSpectrum BathSpectrum::ohmic(double eta, double cutoff)
{
    BathParameters p;
    p.eta = eta;
    p.cutoff = cutoff;
    return make_bath(BathKind::OhmicExpCutoff, p);
}

BathSpectrum BathSpectrum::lorentzian(double center, double width, double strength)
{
    BathParameters p;
    p.center = center;
    p.width = width;
    p.strength = strength;
    return make_bath(BathKind::LorentzianPeak, p);
}

BathSpectrum BathSpectrum::discrete(std::vector<BathMode> modes)
{
    BathParameters p;
    p.modes = std::move(modes);
    return make_bath(BathKind::Discrete, p);
}

double BathSpectrum::density(double omega) const
{
    if (kind_ == BathKind::Discrete) {
        throw UnsupportedEvaluation("density",
                                    "a discrete bath has no pointwise spectral density");
    }
    if (!(omega >= 0.0)) return 0.0;
    switch (kind_) {
        case BathKind::OhmicExpCutoff:
            return params_.eta * omega * std::exp(-omega / params_.cutoff);
        case BathKind::LorentzianPeak: {
            const double d = omega - params_.center;
            const double w = params_.width;
            return params_.strength / pi * w / (d * d + w * w);
        }
        default: return 0.0;
    }
}

BathSpectrum BathSpectrum::scaled(double s) const
{
    require(finite_nonneg(s), "scaled", "coupling scale must be finite and >= 0");
    BathParameters p = params_;
    switch (kind_) {
        case BathKind::OhmicExpCutoff: p.eta *= s; break;
        case BathKind::LorentzianPeak: p.strength *= s; break;
        case BathKind::Discrete:
            p.modes = modes_;
            for (auto& m : p.modes) m.weight *= s;
            break;
        case BathKind::Null: break;
    }
    return make_bath(kind_, p);
}

double BathSpectrum::integration_limit(double omega) const
{
    if (kind_ == BathKind::OhmicExpCutoff) {
        return std::max(ohmic_limit_factor * params_.cutoff,
                        omega + ohmic_limit_factor * params_.cutoff);
    }
    return std::numeric_limits<double>::infinity();
}

BathSpectrum make_bath(BathKind kind, const BathParameters& params)
{
    const std::string op = "make_bath";
    switch (kind) {
        case BathKind::Null: break;
        case BathKind::OhmicExpCutoff:
            require(finite_nonneg(params.eta), op, "eta must be finite and >= 0");
            require(finite_pos(params.cutoff), op, "cutoff must be finite and > 0");
            break;
        case BathKind::LorentzianPeak:
            require(finite_pos(params.center), op, "center must be finite and > 0");
            require(finite_pos(params.width), op, "width must be finite and > 0");
            require(finite_nonneg(params.strength), op, "strength must be finite and >= 0");
            break;
        case BathKind::Discrete:
            for (std::size_t j = 0; j < params.modes.size(); ++j) {
                const auto& m = params.modes[j];
                require(finite_pos(m.frequency), op,
                        "mode " + std::to_string(j) + ": frequency must be finite and > 0");
                require(finite_nonneg(m.weight), op,
                        "mode " + std::to_string(j) + ": weight must be finite and >= 0");
            }
            break;
    }
    return BathSpectrum(kind, params);
}

double kernel_imag(const BathSpectrum& bath, double omega)
{
    const std::string op = "kernel_imag";
    require_frequency(omega, op);
    if (bath.kind() == BathKind::Discrete) {
        throw UnsupportedEvaluation(
            op, "K'' of a discrete bath is a sum of delta functions; evaluate a continuum bath");
    }
    return pi * bath.density(omega);
}

double rotating_shift(const BathSpectrum& bath, double omega, const KernelOptions& opts)
{
    const std::string op = "rotating_shift";
    require_frequency(omega, op);
    switch (bath.kind()) {
        case BathKind::Null: return 0.0;
        case BathKind::Discrete: {
            double sum = 0.0;
            for (const auto& m : bath.modes()) {
                const double gap = m.frequency - omega;
                if (std::abs(gap) <= opts.pole_tolerance) {
                    throw PoleError(op,
                                    "frequency " + std::to_string(omega) +
                                        " is within the pole-exclusion zone of mode at " +
                                        std::to_string(m.frequency),
                                    std::abs(gap));
                }
                sum += m.weight / gap;
            }
            return sum;
        }
        default: return continuum_rotating(bath, omega, opts, op);
    }
}

double counter_shift(const BathSpectrum& bath, double omega, const KernelOptions& opts)
{
    const std::string op = "counter_shift";
    require_frequency(omega, op);
    switch (bath.kind()) {
        case BathKind::Null: return 0.0;
        case BathKind::Discrete: {
            double sum = 0.0;
            for (const auto& m : bath.modes()) sum += m.weight / (m.frequency + omega);
            return sum;
        }
        default: return continuum_counter(bath, omega, opts, op);
    }
}

double kernel_real(const BathSpectrum& bath, double omega, const KernelOptions& opts)
{
    require_frequency(omega, "kernel_real");
    return rotating_shift(bath, omega, opts) + counter_shift(bath, omega, opts);
}

KernelValue kernel(const BathSpectrum& bath, double omega, const KernelOptions& opts)
{
    KernelValue k;
    k.omega = omega;
    k.imag_part = kernel_imag(bath, omega);
    k.real_part = kernel_real(bath, omega, opts);
    return k;
}

BathSpectrum discretize(const BathSpectrum& bath, double omega_max, std::size_t n_modes)
{
    const std::string op = "discretize";
    require(bath.is_continuum(), op, "bath is already discrete");
    require(finite_pos(omega_max), op, "omega_max must be finite and > 0");
    require(n_modes >= 1, op, "n_modes must be >= 1");
    if (bath.kind() == BathKind::Null) return BathSpectrum::discrete({});

    const double dw = omega_max / static_cast<double>(n_modes);
    std::vector<BathMode> modes;
    modes.reserve(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double w = (static_cast<double>(k) + 0.5) * dw;
        modes.push_back({w, bath.density(w) * dw});
    }
    return BathSpectrum::discrete(std::move(modes));
}

double memory_kernel(const BathSpectrum& bath, double t)
{
    switch (bath.kind()) {
        case BathKind::Null: return 0.0;
        case BathKind::Discrete: {
            double sum = 0.0;
            for (const auto& m : bath.modes()) sum += m.weight * std::sin(m.frequency * t);
            return 2.0 * sum;
        }
        case BathKind::OhmicExpCutoff: {
            const double a = 1.0 / bath.parameters().cutoff;
            const double d = a * a + t * t;
            return 4.0 * bath.parameters().eta * a * t / (d * d);
        }
        default:
            throw UnsupportedEvaluation("memory_kernel",
                                        "no time-domain kernel for " + to_string(bath.kind()));
    }
}

}  // namespace dampresp
