#include "dampresp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dampresp/errors.hpp"

namespace dampresp::quad {

namespace {
constexpr unsigned max_depth = 30;
}

Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 const std::string& operation, double abs_tol)
{
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    Result r;
    if (a == b) return r;
    double tol = rel_tol;
    if (abs_tol > 0.0) {
        // one unrefined panel gives the L1 scale the absolute floor maps onto
        double l1 = 0.0;
        gk::integrate(f, a, b, 0, rel_tol, nullptr, &l1);
        if (l1 > 0.0) tol = std::max(rel_tol, abs_tol / l1);
    }
    r.value = gk::integrate(f, a, b, max_depth, tol, &r.error, &r.l1);
    if (!std::isfinite(r.value)) {
        throw NumericError(operation, "quadrature produced a non-finite value",
                           std::numeric_limits<double>::infinity());
    }
    const double allowed = std::max(rel_tol * r.l1, abs_tol) + std::numeric_limits<double>::min();
    if (r.error > allowed) {
        throw NumericError(operation,
                           "quadrature did not converge: estimated error " + std::to_string(r.error) +
                               " exceeds " + std::to_string(allowed),
                           r.error);
    }
    return r;
}

}  // namespace dampresp::quad
