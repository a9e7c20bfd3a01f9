#include "dampresp/eoe.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dampresp/dephasing.hpp"
#include "dampresp/errors.hpp"

namespace dampresp {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
constexpr double identity_tolerance = 1e-14;

cplx checked_inverse(cplx d, const std::string& op)
{
    if (d == cplx{}) throw SingularityError(op, "zero denominator factor");
    return 1.0 / d;
}

cplx optical_factor(const EoeLevelScheme& s, double gamma_mg, const std::string& op)
{
    return checked_inverse(cplx(s.omega_mg + s.omega, gamma_mg), op);
}

}  // namespace

void validate(const EoeLevelScheme& s)
{
    const std::string op = "EoeLevelScheme";
    if (!(std::isfinite(s.omega_ng) && s.omega_ng > 0.0)) throw InvalidArgument(op, "omega_ng must be > 0");
    if (!(std::isfinite(s.omega) && s.omega > 0.0)) throw InvalidArgument(op, "omega must be > 0");
    if (!std::isfinite(s.omega_mg)) throw InvalidArgument(op, "omega_mg must be finite");
    if (!(std::isfinite(s.gamma_ng) && s.gamma_ng >= 0.0)) throw InvalidArgument(op, "gamma_ng must be >= 0");
    if (!(std::isfinite(s.gamma_mg) && s.gamma_mg >= 0.0)) throw InvalidArgument(op, "gamma_mg must be >= 0");
    if (!(std::isfinite(s.f_ng) && s.f_ng >= 0.0)) throw InvalidArgument(op, "f_ng must be >= 0");
}

cplx x_single_fraction(const EoeLevelScheme& s)
{
    validate(s);
    const std::string op = "x_phenomenological";
    const cplx denom = cplx(s.omega_ng, -s.gamma_ng) * cplx(s.omega_ng, s.gamma_ng) *
                       cplx(s.omega_mg + s.omega, s.gamma_mg);
    if (denom == cplx{}) throw SingularityError(op, "zero denominator factor");
    return 2.0 * I * s.gamma_ng / denom;
}

cplx x_bracket_form(const EoeLevelScheme& s)
{
    validate(s);
    const std::string op = "x_phenomenological";
    const cplx bracket =
        checked_inverse(cplx(s.omega_ng, -s.gamma_ng), op) - checked_inverse(cplx(s.omega_ng, s.gamma_ng), op);
    return optical_factor(s, s.gamma_mg, op) * bracket;
}

cplx x_phenomenological(const EoeLevelScheme& s)
{
    const cplx single = x_single_fraction(s);
    const cplx bracket = x_bracket_form(s);
    const double scale = std::max(std::abs(single), std::abs(bracket));
    if (std::abs(single - bracket) > identity_tolerance * scale) {
        throw NumericError("x_phenomenological", "single-fraction and bracket forms disagree",
                           std::abs(single - bracket) / scale);
    }
    return single;
}

cplx x_frequency_dependent(const EoeLevelScheme& s, const BathSpectrum& bath)
{
    validate(s);
    const std::string op = "x_frequency_dependent";
    const double gamma_static = kernel_imag(bath, 0.0);
    const double gamma_optical = kernel_imag(bath, s.omega);
    const cplx bracket = checked_inverse(cplx(s.omega_ng, -gamma_static), op) -
                         checked_inverse(cplx(s.omega_ng, gamma_static), op);
    return optical_factor(s, gamma_optical, op) * bracket;
}

double suppression_exponent(double omega_ng, double f_ng)
{
    if (!(std::isfinite(f_ng) && f_ng > 0.0)) throw InvalidArgument("suppression_exponent", "f_ng must be > 0");
    return omega_ng * omega_ng / (2.0 * f_ng * f_ng);
}

cplx x_collisional(const EoeLevelScheme& s)
{
    validate(s);
    const std::string op = "x_collisional";
    if (!(s.f_ng > 0.0)) throw InvalidArgument(op, "f_ng must be > 0");
    const cplx bracket = 2.0 * I * static_gaussian_bracket(s.omega_ng, s.f_ng);
    return optical_factor(s, s.gamma_mg, op) * bracket;
}

EoeReport eoe_report(const EoeLevelScheme& scheme, const BathSpectrum& bath, double f_ng)
{
    EoeLevelScheme s = scheme;
    s.f_ng = f_ng;
    validate(s);

    EoeReport r;
    r.phenomenological = x_phenomenological(s);
    r.frequency_dependent = x_frequency_dependent(s, bath);
    if (f_ng > 0.0) {
        r.collisional = x_collisional(s);
        r.suppression_exponent = suppression_exponent(s.omega_ng, f_ng);
    } else {
        r.collisional = {};
        r.suppression_exponent = std::numeric_limits<double>::infinity();
    }
    r.radiative_vanishes = r.frequency_dependent == cplx{};
    r.collisional_negligible = r.collisional == cplx{} ||
                               std::abs(r.collisional) < negligible_ratio * std::abs(r.phenomenological);
    return r;
}

}  // namespace dampresp
