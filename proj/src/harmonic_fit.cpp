#include <cmath>
#include <complex>
#include <vector>

#include "dampresp/errors.hpp"
#include "dampresp/timeseries.hpp"

namespace dampresp {

namespace {

using cplx = std::complex<double>;

template <typename T>
std::size_t window_start(const TimeSeries<T>& s, double window, const std::string& op)
{
    if (!(window > 0.0 && window <= 1.0)) throw InvalidArgument(op, "window must be in (0, 1]");
    const auto n = s.size();
    const auto len = static_cast<std::size_t>(std::ceil(window * static_cast<double>(n)));
    if (len < 3) throw InvalidArgument(op, "fit window holds fewer than 3 samples");
    return n - len;
}

double relative_residual(double misfit2, double data2)
{
    if (data2 == 0.0) return misfit2 == 0.0 ? 0.0 : 1.0;
    return std::sqrt(misfit2 / data2);
}

}  // namespace

HarmonicFit fit_real_harmonic(const RealSeries& series, double omega, double window)
{
    const std::string op = "fit_real_harmonic";
    const auto first = window_start(series, window, op);
    const auto n = series.size();

    HarmonicFit out;
    double data2 = 0.0;
    double misfit2 = 0.0;

    if (omega == 0.0) {
        double mean = 0.0;
        for (auto k = first; k < n; ++k) mean += series.values[k];
        mean /= static_cast<double>(n - first);
        for (auto k = first; k < n; ++k) {
            const double v = series.values[k];
            data2 += v * v;
            misfit2 += (v - mean) * (v - mean);
        }
        out.amplitude = {0.5 * mean, 0.0};
        out.residual = relative_residual(misfit2, data2);
        return out;
    }

    // x = p cos(wt) + q sin(wt); a = (p + i q) / 2.
    double cc = 0.0, cs = 0.0, ss = 0.0, xc = 0.0, xs = 0.0;
    for (auto k = first; k < n; ++k) {
        const double t = series.time(k);
        const double c = std::cos(omega * t);
        const double s = std::sin(omega * t);
        const double v = series.values[k];
        cc += c * c;
        cs += c * s;
        ss += s * s;
        xc += v * c;
        xs += v * s;
    }
    const double det = cc * ss - cs * cs;
    if (std::abs(det) <= 1e-12 * cc * ss) {
        throw ConvergenceError(op, "fit window too short to separate cos and sin");
    }
    const double p = (xc * ss - xs * cs) / det;
    const double q = (xs * cc - xc * cs) / det;
    for (auto k = first; k < n; ++k) {
        const double t = series.time(k);
        const double v = series.values[k];
        const double m = v - (p * std::cos(omega * t) + q * std::sin(omega * t));
        data2 += v * v;
        misfit2 += m * m;
    }
    out.amplitude = {0.5 * p, 0.5 * q};
    out.residual = relative_residual(misfit2, data2);
    return out;
}

ToneFit fit_tones(const ComplexSeries& series, std::span<const double> freqs, double window)
{
    const std::string op = "fit_tones";
    const auto first = window_start(series, window, op);
    const auto n = series.size();
    const std::size_t m = freqs.size();
    if (m == 0) throw InvalidArgument(op, "no tones to fit");

    // Normal equations G c = r with G_ab = sum conj(u_a) u_b, u_a = exp(-i f_a t).
    std::vector<cplx> g(m * m), r(m), u(m);
    for (auto k = first; k < n; ++k) {
        const double t = series.time(k);
        for (std::size_t a = 0; a < m; ++a) u[a] = std::polar(1.0, -freqs[a] * t);
        for (std::size_t a = 0; a < m; ++a) {
            r[a] += std::conj(u[a]) * series.values[k];
            for (std::size_t b = 0; b < m; ++b) g[a * m + b] += std::conj(u[a]) * u[b];
        }
    }
    const double diag = static_cast<double>(n - first);

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < m; ++row) {
            if (std::abs(g[row * m + col]) > std::abs(g[piv * m + col])) piv = row;
        }
        if (std::abs(g[piv * m + col]) <= 1e-9 * diag) {
            throw ConvergenceError(op, "fit window too short to separate the tones");
        }
        if (piv != col) {
            for (std::size_t b = 0; b < m; ++b) std::swap(g[col * m + b], g[piv * m + b]);
            std::swap(r[col], r[piv]);
        }
        for (std::size_t row = col + 1; row < m; ++row) {
            const cplx f = g[row * m + col] / g[col * m + col];
            for (std::size_t b = col; b < m; ++b) g[row * m + b] -= f * g[col * m + b];
            r[row] -= f * r[col];
        }
    }
    ToneFit out;
    out.coefficients.assign(m, cplx{});
    for (std::size_t a = m; a-- > 0;) {
        cplx acc = r[a];
        for (std::size_t b = a + 1; b < m; ++b) acc -= g[a * m + b] * out.coefficients[b];
        out.coefficients[a] = acc / g[a * m + a];
    }

    double data2 = 0.0;
    double misfit2 = 0.0;
    for (auto k = first; k < n; ++k) {
        const double t = series.time(k);
        cplx model{};
        for (std::size_t a = 0; a < m; ++a) model += out.coefficients[a] * std::polar(1.0, -freqs[a] * t);
        data2 += std::norm(series.values[k]);
        misfit2 += std::norm(series.values[k] - model);
    }
    out.residual = relative_residual(misfit2, data2);
    return out;
}

TwoToneFit fit_two_tone(const ComplexSeries& series, double omega, double window, std::span<const double> nuisance)
{
    std::vector<double> freqs;
    if (omega == 0.0) {
        freqs.push_back(0.0);
    } else {
        freqs.push_back(omega);
        freqs.push_back(-omega);
    }
    freqs.insert(freqs.end(), nuisance.begin(), nuisance.end());
    const ToneFit f = fit_tones(series, freqs, window);

    TwoToneFit out;
    out.plus = f.coefficients[0];
    out.merged = omega == 0.0;
    out.minus = out.merged ? cplx{} : f.coefficients[1];
    out.residual = f.residual;
    return out;
}

}  // namespace dampresp
