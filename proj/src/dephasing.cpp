#include "dampresp/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dampresp/errors.hpp"
#include "dampresp/parallel.hpp"
#include "dampresp/quadrature.hpp"

namespace dampresp {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
constexpr double points_per_time = 40.0;
constexpr double min_coherence_times = 10.0;

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// x - 1 + exp(-x), accurate for small x.
double relaxation_phi(double x)
{
    if (x < 1e-3) {
        return x * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)));
    }
    return x + std::expm1(-x);
}

// 2x - 3 + 4 e^{-x} - e^{-2x}: conditional variance of int f over a step,
// in units of f0^2 / Gamma^2.
double integrated_variance(double x)
{
    if (x < 0.1) {
        // sum_{n>=3} [4 (-1)^n - (-2)^n] x^n / n!
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n <= 20; ++n) {
            term *= x / n;
            if (n >= 3) {
                const double coeff = 4.0 * ((n % 2) ? -1.0 : 1.0) - std::pow(-2.0, n);
                sum += coeff * term;
            }
        }
        return sum;
    }
    const double em = std::expm1(-x);
    return 2.0 * x + 2.0 * em - em * em;
}

// (e^z - 1)/z and (z e^z - e^z + 1)/z^2 for z = i a.
std::pair<cplx, cplx> linear_phase_weights(double a)
{
    const cplx z{0.0, a};
    if (std::abs(a) < 0.1) {
        cplx e1{}, e2{};
        cplx zn{1.0, 0.0};
        double fact = 1.0;
        for (int n = 0; n < 20; ++n) {
            if (n > 0) fact *= n;
            e1 += zn / (fact * (n + 1));
            e2 += zn / (fact * (n + 2));
            zn *= z;
        }
        return {e1, e2};
    }
    const cplx ez = std::exp(z);
    return {(ez - 1.0) / z, (z * ez - ez + 1.0) / (z * z)};
}

void require_positive(double x, const std::string& op, const std::string& what)
{
    if (!(std::isfinite(x) && x > 0.0)) throw InvalidArgument(op, what + " must be > 0");
}

// Delete-one jackknife standard error of the mean of xs.
double jackknife_se(const std::vector<double>& xs)
{
    const auto n = static_cast<double>(xs.size());
    double total = 0.0;
    for (double x : xs) total += x;
    double mean_loo = 0.0;
    std::vector<double> loo(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        loo[i] = (total - xs[i]) / (n - 1.0);
        mean_loo += loo[i];
    }
    mean_loo /= n;
    double acc = 0.0;
    for (double v : loo) acc += (v - mean_loo) * (v - mean_loo);
    return std::sqrt((n - 1.0) / n * acc);
}

}  // namespace

void validate(const DephasingParams& p)
{
    const std::string op = "DephasingParams";
    if (!(std::isfinite(p.f0) && p.f0 >= 0.0)) throw InvalidArgument(op, "f0 must be finite and >= 0");
    require_positive(p.gamma, op, "gamma");
    if (!std::isfinite(p.delta)) throw InvalidArgument(op, "delta must be finite");
    if (!(std::isfinite(p.drive.real()) && std::isfinite(p.drive.imag()))) {
        throw InvalidArgument(op, "drive must be finite");
    }
}

RealSeries sample_noise_path(const DephasingParams& p, double dt, std::size_t n, std::uint64_t seed)
{
    const std::string op = "sample_noise_path";
    validate(p);
    require_positive(dt, op, "dt");
    if (n < 2) throw InvalidArgument(op, "n must be >= 2");

    auto engine = stream_engine(seed, 0);
    std::normal_distribution<double> normal;
    const double decay = std::exp(-p.gamma * dt);
    const double kick = p.f0 * std::sqrt(-std::expm1(-2.0 * p.gamma * dt));

    RealSeries path;
    path.dt = dt;
    path.values.resize(n);
    path.values[0] = p.f0 * normal(engine);
    for (std::size_t k = 1; k < n; ++k) path.values[k] = path.values[k - 1] * decay + kick * normal(engine);
    path.metadata = {{"process", "stationary Ornstein-Uhlenbeck"}, {"seed", std::to_string(seed)}};
    return path;
}

double kubo_log_envelope(const DephasingParams& p, double t)
{
    return -(p.f0 * p.f0) / (p.gamma * p.gamma) * relaxation_phi(p.gamma * t);
}

namespace {

// Smallest t with log C(t) <= target (< 0). log C is strictly decreasing.
double envelope_crossing(const DephasingParams& p, double target)
{
    double hi = 1.0 / std::max(p.f0, p.gamma);
    while (kubo_log_envelope(p, hi) > target) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kubo_log_envelope(p, mid) > target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

double coherence_time(const DephasingParams& p)
{
    validate(p);
    if (p.f0 == 0.0) return std::numeric_limits<double>::infinity();
    return envelope_crossing(p, -1.0);
}

EnsembleEstimate mc_coherence(const DephasingParams& p, const MonteCarloOptions& opts)
{
    const std::string op = "mc_coherence";
    validate(p);
    if (opts.trajectories < 2) throw InvalidArgument(op, "need at least 2 trajectories");

    EnsembleEstimate est;
    est.trajectories = opts.trajectories;
    est.seed = opts.seed;

    if (p.f0 == 0.0) {
        // Noise-free: every trajectory is the same deterministic solution,
        // whose non-oscillating part is the steady state i G / (i Delta).
        if (p.delta == 0.0) {
            throw DivergenceError(op, "f0 = 0 and delta = 0: the coherence grows without bound");
        }
        est.mean = I * p.drive / (I * p.delta);
        est.t_max = opts.t_max;
        est.dt = opts.dt;
        return est;
    }

    const double rate = std::max(std::abs(p.delta), p.f0);
    const double dt_limit = 1.0 / (points_per_time * rate);
    const double tc = coherence_time(p);
    const double dt = opts.dt > 0.0 ? opts.dt : dt_limit;
    const double t_req = min_coherence_times * tc;
    const double t_max = opts.t_max > 0.0 ? opts.t_max : t_req;
    if (dt > dt_limit * (1.0 + 1e-9)) {
        throw InvalidArgument(op, "dt = " + std::to_string(dt) + " exceeds 1/(40 max(|delta|, f0)) = " +
                                      std::to_string(dt_limit));
    }
    if (t_max < t_req * (1.0 - 1e-9)) {
        throw InvalidArgument(op, "t_max = " + std::to_string(t_max) +
                                      " is shorter than 10 coherence times = " + std::to_string(t_req));
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    const auto check_step = static_cast<std::size_t>(std::llround(opts.drift_checkpoint * steps));
    est.dt = dt;
    est.t_max = static_cast<double>(steps) * dt;
    est.steps = steps;

    // Exact one-step law of (f, int f) given f_k.
    const double x = p.gamma * dt;
    const double f0sq = p.f0 * p.f0;
    const double decay = std::exp(-x);
    const double mean_int = -std::expm1(-x) / p.gamma;
    const double var_f = f0sq * -std::expm1(-2.0 * x);
    const double var_int = f0sq / (p.gamma * p.gamma) * integrated_variance(x);
    const double cov = f0sq / p.gamma * std::expm1(-x) * std::expm1(-x);
    const double l11 = std::sqrt(var_f);
    const double l21 = l11 > 0.0 ? cov / l11 : 0.0;
    const double l22 = std::sqrt(std::max(0.0, var_int - l21 * l21));

    const auto [e1, e2] = linear_phase_weights(p.delta * dt);
    const cplx w0 = dt * (e1 - e2);
    const cplx w1 = dt * e2 * std::polar(1.0, -p.delta * dt);

    std::vector<cplx> final_value(opts.trajectories);
    std::vector<cplx> drift(opts.trajectories);

    parallel_for(opts.trajectories, opts.threads, [&](std::size_t k) {
        auto engine = stream_engine(opts.seed, k);
        std::normal_distribution<double> normal;
        double f = p.f0 * normal(engine);
        double phi = 0.0;
        cplx u_prev{1.0, 0.0};  // exp(i theta_0)
        cplx integral{};
        cplx at_check{};
        for (std::size_t n = 0; n < steps; ++n) {
            const double z1 = normal(engine);
            const double z2 = normal(engine);
            const double f_next = decay * f + l11 * z1;
            phi += mean_int * f + l21 * z1 + l22 * z2;
            f = f_next;
            const double theta = p.delta * static_cast<double>(n + 1) * dt + phi;
            const cplx u_next = std::polar(1.0, theta);
            integral += w0 * u_prev + w1 * u_next;
            u_prev = u_next;
            if (n + 1 == check_step) at_check = I * p.drive * std::conj(u_next) * integral;
        }
        const cplx sigma = I * p.drive * std::conj(u_prev) * integral;
        final_value[k] = sigma;
        drift[k] = sigma - at_check;
    });

    std::vector<double> re(opts.trajectories), im(opts.trajectories);
    std::vector<double> dre(opts.trajectories), dim(opts.trajectories);
    cplx total{};
    cplx drift_total{};
    for (std::size_t k = 0; k < opts.trajectories; ++k) {
        total += final_value[k];
        drift_total += drift[k];
        re[k] = final_value[k].real();
        im[k] = final_value[k].imag();
        dre[k] = drift[k].real();
        dim[k] = drift[k].imag();
    }
    const auto n = static_cast<double>(opts.trajectories);
    est.mean = total / n;
    est.se_real = jackknife_se(re);
    est.se_imag = jackknife_se(im);

    const cplx mean_drift = drift_total / n;
    const double dse_re = jackknife_se(dre);
    const double dse_im = jackknife_se(dim);
    const double scale = std::abs(est.mean);
    const double floor = 1e-12 * scale;
    if (std::abs(mean_drift.real()) > opts.drift_sigmas * dse_re + floor ||
        std::abs(mean_drift.imag()) > opts.drift_sigmas * dse_im + floor) {
        throw ConvergenceError(op, "ensemble mean still drifting between t = " +
                                       std::to_string(opts.drift_checkpoint * est.t_max) + " and t_max",
                               std::abs(mean_drift));
    }
    return est;
}

std::complex<double> kubo_coherence(const DephasingParams& p, const KuboOptions& opts)
{
    const std::string op = "kubo_coherence";
    validate(p);
    if (p.drive == cplx{}) return {};
    if (p.f0 == 0.0) {
        if (p.delta == 0.0) {
            throw DivergenceError(op, "f0 = 0 and delta = 0: the Kubo integral diverges",
                                  std::numeric_limits<double>::infinity());
        }
        return I * p.drive / (I * p.delta);
    }

    const double t_end = envelope_crossing(p, std::log(opts.envelope_floor));
    double panel = std::min(t_end, 4.0 * coherence_time(p));
    if (p.delta != 0.0) panel = std::min(panel, 2.0 * pi / std::abs(p.delta));
    const auto panels = static_cast<std::size_t>(std::ceil(t_end / panel));

    auto cos_part = [&](double t) { return std::cos(p.delta * t) * std::exp(kubo_log_envelope(p, t)); };
    auto sin_part = [&](double t) { return std::sin(p.delta * t) * std::exp(kubo_log_envelope(p, t)); };
    double a = 0.0;
    double b = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = t_end * static_cast<double>(k) / static_cast<double>(panels);
        const double hi = t_end * static_cast<double>(k + 1) / static_cast<double>(panels);
        a += quad::integrate(cos_part, lo, hi, opts.rel_tol, op).value;
        if (p.delta != 0.0) b += quad::integrate(sin_part, lo, hi, opts.rel_tol, op).value;
    }
    // int exp(-i Delta t) C(t) dt = a - i b
    return I * p.drive * cplx(a, -b);
}

std::complex<double> fast_modulation_coherence(const DephasingParams& p)
{
    validate(p);
    const cplx denom{p.f0 * p.f0 / p.gamma, p.delta};
    if (denom == cplx{}) {
        throw SingularityError("fast_modulation_coherence", "f0^2/Gamma + i Delta vanishes");
    }
    return I * p.drive / denom;
}

double static_gaussian_bracket(double omega, double f)
{
    if (!(std::isfinite(f) && f > 0.0)) throw InvalidArgument("static_gaussian_bracket", "f must be > 0");
    if (!std::isfinite(omega)) throw InvalidArgument("static_gaussian_bracket", "omega must be finite");
    return std::sqrt(pi / (2.0 * f * f)) * std::exp(-omega * omega / (2.0 * f * f));
}

double static_gaussian_bracket_quadrature(double omega, double f, double rel_tol)
{
    const std::string op = "static_gaussian_bracket_quadrature";
    if (!(std::isfinite(f) && f > 0.0)) throw InvalidArgument(op, "f must be > 0");
    if (!std::isfinite(omega)) throw InvalidArgument(op, "omega must be finite");
    // exp(-f^2 t^2 / 2) < 1e-17 beyond t_end.
    const double t_end = std::sqrt(2.0 * 39.0) / f;
    double panel = t_end;
    if (omega != 0.0) panel = std::min(panel, 2.0 * pi / std::abs(omega));
    const auto panels = static_cast<std::size_t>(std::ceil(t_end / panel));
    auto integrand = [&](double t) { return std::cos(omega * t) * std::exp(-0.5 * f * f * t * t); };
    double total = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = t_end * static_cast<double>(k) / static_cast<double>(panels);
        const double hi = t_end * static_cast<double>(k + 1) / static_cast<double>(panels);
        total += quad::integrate(integrand, lo, hi, rel_tol, op).value;
    }
    return total;
}

}  // namespace dampresp
