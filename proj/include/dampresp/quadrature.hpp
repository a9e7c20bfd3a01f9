#pragma once

#include <functional>
#include <string>

namespace dampresp::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    double l1 = 0.0;     // integral of |f|, the scale the tolerance applies to
};

// Adaptive 61-point Gauss-Kronrod on [a, b]; b may be +infinity.
// Throws NumericError (tagged with `operation`) if the estimated error
// exceeds max(rel_tol * L1, abs_tol) after the maximum bisection depth.
// abs_tol matters when f is pure cancellation noise and L1 is meaningless.
Result integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 const std::string& operation, double abs_tol = 0.0);

}  // namespace dampresp::quad
