#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "dampresp/errors.hpp"
#include "dampresp/oscillator.hpp"

namespace dampresp::detail {

// Checks a fixed-step grid against the resolution requirements and
// returns the number of steps.
inline std::size_t checked_steps(const std::string& op, const TimeDomainOptions& opts, double fastest,
                                 double slowest)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double slack = 1.0 + 1e-9;
    if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw InvalidArgument(op, "dt must be > 0");
    if (!(opts.t_max > 0.0) || !std::isfinite(opts.t_max)) {
        throw InvalidArgument(op, "t_max must be > 0");
    }
    if (fastest > 0.0 && opts.dt * opts.points_per_period * fastest > two_pi * slack) {
        throw InvalidArgument(op, "dt = " + std::to_string(opts.dt) + " gives fewer than " +
                                      std::to_string(opts.points_per_period) +
                                      " points per period of the fastest frequency " +
                                      std::to_string(fastest));
    }
    if (slowest > 0.0 && opts.t_max * slowest * slack < opts.min_slow_periods * two_pi) {
        throw InvalidArgument(op, "t_max = " + std::to_string(opts.t_max) + " covers fewer than " +
                                      std::to_string(opts.min_slow_periods) +
                                      " periods of the slowest frequency " + std::to_string(slowest));
    }
    const auto n = static_cast<std::size_t>(std::llround(opts.t_max / opts.dt));
    if (n < 2) throw InvalidArgument(op, "time grid needs at least 2 samples");
    return n;
}

}  // namespace dampresp::detail
