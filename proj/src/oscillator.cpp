#include "dampresp/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dampresp/errors.hpp"
#include "rk4.hpp"
#include "time_grid.hpp"

namespace dampresp {

namespace {

using cplx = std::complex<double>;

constexpr double singular_threshold = 1e-12;

}  // namespace

void validate(const OscillatorParams& p)
{
    const std::string op = "OscillatorParams";
    if (!(std::isfinite(p.mass) && p.mass > 0.0)) throw InvalidArgument(op, "mass must be > 0");
    if (!std::isfinite(p.charge)) throw InvalidArgument(op, "charge must be finite");
    if (!(std::isfinite(p.omega0) && p.omega0 > 0.0)) throw InvalidArgument(op, "omega0 must be > 0");
    if (!(std::isfinite(p.damping) && p.damping >= 0.0)) {
        throw InvalidArgument(op, "damping must be finite and >= 0");
    }
}

cplx chi_phenomenological(const OscillatorParams& p, double omega)
{
    validate(p);
    if (!(std::isfinite(omega) && omega >= 0.0)) {
        throw InvalidArgument("chi_phenomenological", "frequency must be >= 0");
    }
    const cplx denom = p.mass * cplx(p.omega0 * p.omega0 - omega * omega, -omega * p.damping);
    if (std::abs(denom) <= singular_threshold) {
        throw SingularityError("chi_phenomenological", "undamped pole at w = w0", std::abs(denom));
    }
    return p.charge * p.charge / denom;
}

cplx chi_exact(const OscillatorParams& p, const BathSpectrum& bath, double omega,
               const KernelOptions& opts)
{
    validate(p);
    const KernelValue k = kernel(bath, omega, opts);
    const cplx denom = cplx(p.mass * (p.omega0 * p.omega0 - omega * omega) - k.real_part, -k.imag_part);
    if (std::abs(denom) <= singular_threshold) {
        throw SingularityError("chi_exact", "denominator m(w0^2 - w^2) - K(w) vanishes", std::abs(denom));
    }
    return p.charge * p.charge / denom;
}

ResonanceMatch match_at_resonance(const OscillatorParams& observed, const BathSpectrum& bath,
                                  const KernelOptions& opts)
{
    validate(observed);
    ResonanceMatch m;
    const double wr = observed.omega0;
    m.kernel_at_resonance = kernel(bath, wr, opts);

    m.phenomenological = observed;
    m.phenomenological.damping = m.kernel_at_resonance.imag_part / (observed.mass * wr);

    const double bare2 = wr * wr + m.kernel_at_resonance.real_part / observed.mass;
    if (!(bare2 > 0.0)) {
        throw SingularityError("match_at_resonance",
                               "dispersive shift exceeds w_r^2; no positive bare frequency", bare2);
    }
    m.bare = observed;
    m.bare.omega0 = std::sqrt(bare2);
    m.bare.damping = 0.0;
    return m;
}

OscillatorRun simulate_time_domain(const OscillatorParams& p, const BathSpectrum& bath,
                                   const DriveField& field, const TimeDomainOptions& opts)
{
    const std::string op = "simulate_time_domain";
    validate(p);
    if (bath.kind() != BathKind::Discrete && bath.kind() != BathKind::Null) {
        throw InvalidArgument(op, "time-domain simulation needs a discrete or null bath");
    }
    if (!(std::isfinite(field.omega) && field.omega >= 0.0)) {
        throw InvalidArgument(op, "drive frequency must be >= 0");
    }

    const auto modes = bath.modes();
    const std::size_t m = modes.size();
    double fastest = std::max(field.omega, p.omega0);
    for (const auto& mode : modes) fastest = std::max(fastest, mode.frequency);
    const double slowest = field.omega > 0.0 ? std::min(field.omega, p.omega0) : p.omega0;
    const std::size_t steps = detail::checked_steps(op, opts, fastest, slowest);

    // State layout: [x, v, s_1..s_m, q_1..q_m].
    std::vector<double> freq(m), weight(m);
    for (std::size_t j = 0; j < m; ++j) {
        freq[j] = modes[j].frequency;
        weight[j] = modes[j].weight;
    }
    const double w0sq = p.omega0 * p.omega0;
    const double e_over_m = p.charge / p.mass;
    const double two_over_m = 2.0 / p.mass;
    const cplx e0 = field.amplitude;
    const double wd = field.omega;

    auto deriv = [&](double t, const std::vector<double>& y, std::vector<double>& dy) {
        const double x = y[0];
        const double v = y[1];
        const double* s = y.data() + 2;
        const double* q = y.data() + 2 + m;
        double* ds = dy.data() + 2;
        double* dq = dy.data() + 2 + m;
        double memory = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            memory += weight[j] * s[j];
            ds[j] = freq[j] * q[j];
            dq[j] = x - freq[j] * s[j];
        }
        const double drive = 2.0 * (e0 * std::polar(1.0, -wd * t)).real();
        dy[0] = v;
        dy[1] = -w0sq * x - p.damping * v + e_over_m * drive + two_over_m * memory;
    };

    std::vector<double> y(2 + 2 * m, 0.0);
    detail::Rk4<double> rk(y.size());

    OscillatorRun run;
    run.trajectory.t0 = 0.0;
    run.trajectory.dt = opts.dt;
    run.trajectory.values.reserve(steps + 1);
    run.trajectory.values.push_back(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        rk.step(static_cast<double>(k) * opts.dt, opts.dt, y, deriv);
        if (!std::isfinite(y[0])) {
            throw ConvergenceError(op, "trajectory diverged at step " + std::to_string(k + 1));
        }
        run.trajectory.values.push_back(y[0]);
    }

    std::ostringstream dt_str;
    dt_str.precision(17);
    dt_str << opts.dt;
    run.trajectory.metadata = {{"solver", "rk4-auxiliary-modes"},
                               {"dt", dt_str.str()},
                               {"modes", std::to_string(m)},
                               {"fit_window", std::to_string(opts.fit_window)}};

    const HarmonicFit fit = fit_real_harmonic(run.trajectory, field.omega, opts.fit_window);
    run.amplitude = fit.amplitude;
    run.residual = fit.residual;
    if (fit.residual > opts.max_residual) {
        throw ConvergenceError(op,
                               "steady-state fit residual " + std::to_string(fit.residual) +
                                   " exceeds " + std::to_string(opts.max_residual),
                               fit.residual);
    }
    return run;
}

}  // namespace dampresp
