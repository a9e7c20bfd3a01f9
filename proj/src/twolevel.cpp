#include "dampresp/twolevel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dampresp/errors.hpp"
#include "rk4.hpp"
#include "time_grid.hpp"

namespace dampresp {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

void require_frequency(double omega, const std::string& op)
{
    if (!(std::isfinite(omega) && omega >= 0.0)) throw InvalidArgument(op, "frequency must be >= 0");
}

cplx divide(cplx num, const Denominator& d, const std::string& op)
{
    const cplx den = d.total();
    if (num == cplx{}) return {};
    if (std::abs(den) == 0.0) throw SingularityError(op, "amplitude denominator vanishes");
    return num / den;
}

}  // namespace

void validate(const TwoLevelParams& p)
{
    const std::string op = "TwoLevelParams";
    if (!(std::isfinite(p.omega0) && p.omega0 > 0.0)) throw InvalidArgument(op, "omega0 must be > 0");
    if (!(std::isfinite(p.drive.real()) && std::isfinite(p.drive.imag()))) {
        throw InvalidArgument(op, "drive amplitude must be finite");
    }
    if (!(std::isfinite(p.dipole.real()) && std::isfinite(p.dipole.imag()))) {
        throw InvalidArgument(op, "dipole must be finite");
    }
}

Amplitude amplitude_rotating(const TwoLevelParams& p, const BathSpectrum& bath, double omega,
                             const KernelOptions& opts)
{
    const std::string op = "amplitude_rotating";
    validate(p);
    require_frequency(omega, op);
    Amplitude a;
    a.denominator.detuning = I * (p.omega0 - omega);
    // sum |g|^2 / (i(w_k - w)) -> pi J(w) - i P int J/(x - w); a finite
    // discrete sum has no absorptive part off its poles.
    a.denominator.absorptive = bath.is_continuum() ? kernel_imag(bath, omega) : 0.0;
    a.denominator.dispersive = -I * rotating_shift(bath, omega, opts);
    a.value = divide(I * p.drive, a.denominator, op);
    return a;
}

Amplitude amplitude_counter(const TwoLevelParams& p, const BathSpectrum& bath, double omega,
                            const KernelOptions& opts)
{
    const std::string op = "amplitude_counter";
    validate(p);
    require_frequency(omega, op);
    Amplitude a;
    a.denominator.detuning = I * (p.omega0 + omega);
    a.denominator.absorptive = 0.0;
    a.denominator.dispersive = -I * counter_shift(bath, omega, opts);
    a.value = divide(I * std::conj(p.drive), a.denominator, op);
    return a;
}

cplx polarization_amplitude(const TwoLevelParams& p, const BathSpectrum& bath, double omega,
                            const KernelOptions& opts)
{
    const cplx plus = amplitude_rotating(p, bath, omega, opts).value;
    const cplx minus = amplitude_counter(p, bath, omega, opts).value;
    return plus * std::conj(p.dipole) + std::conj(minus) * p.dipole;
}

CoherenceRun simulate_coherence(const TwoLevelParams& p, const BathSpectrum& bath, double omega,
                                const TimeDomainOptions& opts)
{
    const std::string op = "simulate_coherence";
    validate(p);
    require_frequency(omega, op);
    if (bath.kind() != BathKind::Discrete && bath.kind() != BathKind::Null) {
        throw InvalidArgument(op, "time-domain simulation needs a discrete or null bath");
    }

    const auto modes = bath.modes();
    const std::size_t m = modes.size();
    double fastest = std::max(omega, p.omega0);
    for (const auto& mode : modes) fastest = std::max(fastest, mode.frequency);
    const double slowest = omega > 0.0 ? std::min(omega, p.omega0) : p.omega0;
    const std::size_t steps = detail::checked_steps(op, opts, fastest, slowest);

    std::vector<double> freq(m), weight(m);
    for (std::size_t j = 0; j < m; ++j) {
        freq[j] = modes[j].frequency;
        weight[j] = modes[j].weight;
    }
    const cplx g0 = p.drive;
    const double w0 = p.omega0;

    // State layout: [psi, c_1..c_m].
    auto deriv = [&](double t, const std::vector<cplx>& y, std::vector<cplx>& dy) {
        const cplx psi = y[0];
        cplx memory{};
        for (std::size_t j = 0; j < m; ++j) {
            const cplx c = y[j + 1];
            memory += weight[j] * c;
            dy[j + 1] = cplx(freq[j] * c.imag(), -freq[j] * c.real()) + psi;
        }
        const cplx phase = std::polar(1.0, -omega * t);
        const cplx g = g0 * phase + std::conj(g0) * std::conj(phase);
        dy[0] = cplx(w0 * psi.imag(), -w0 * psi.real()) + I * g - memory;
    };

    std::vector<cplx> y(1 + m);
    detail::Rk4<cplx> rk(y.size());

    CoherenceRun run;
    run.trajectory.t0 = 0.0;
    run.trajectory.dt = opts.dt;
    run.trajectory.values.reserve(steps + 1);
    run.trajectory.values.push_back({});
    for (std::size_t k = 0; k < steps; ++k) {
        rk.step(static_cast<double>(k) * opts.dt, opts.dt, y, deriv);
        if (!std::isfinite(y[0].real()) || !std::isfinite(y[0].imag())) {
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

    if (g0 == cplx{}) {
        run.fit = TwoToneFit{{}, {}, 0.0, omega == 0.0};
        return run;
    }
    // Without bath modes nothing damps the free oscillation at w0; fit it
    // alongside so the driven tones are still recovered.
    std::vector<double> free_tones;
    if (m == 0) free_tones.push_back(w0);
    run.fit = fit_two_tone(run.trajectory, omega, opts.fit_window, free_tones);
    if (run.fit.residual > opts.max_residual) {
        throw ConvergenceError(op,
                               "steady-state fit residual " + std::to_string(run.fit.residual) +
                                   " exceeds " + std::to_string(opts.max_residual),
                               run.fit.residual);
    }
    return run;
}

std::vector<SensitivityRow> damping_sensitivity(const TwoLevelParams& p, const BathSpectrum& bath,
                                                double omega, const std::vector<double>& scales,
                                                const KernelOptions& opts)
{
    std::vector<SensitivityRow> rows;
    rows.reserve(scales.size());
    for (double s : scales) {
        const BathSpectrum scaled = bath.scaled(s);
        const Amplitude plus = amplitude_rotating(p, scaled, omega, opts);
        const Amplitude minus = amplitude_counter(p, scaled, omega, opts);
        rows.push_back({s, std::abs(plus.value), std::abs(minus.value), plus.denominator.absorptive,
                        minus.denominator.absorptive});
    }
    return rows;
}

}  // namespace dampresp
