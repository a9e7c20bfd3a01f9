#pragma once

#include <cstddef>
#include <vector>

namespace dampresp::detail {

// Classical fourth-order Runge-Kutta over a flat state vector. The
// derivative callback has signature deriv(t, const std::vector<T>& y,
// std::vector<T>& dydt).
template <typename T>
class Rk4 {
public:
    explicit Rk4(std::size_t n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {}

    template <typename Deriv>
    void step(double t, double h, std::vector<T>& y, Deriv&& deriv)
    {
        const std::size_t n = y.size();
        deriv(t, y, k1_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * h) * k1_[i];
        deriv(t + 0.5 * h, tmp_, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + (0.5 * h) * k2_[i];
        deriv(t + 0.5 * h, tmp_, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
        deriv(t + h, tmp_, k4_);
        const double w = h / 6.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
        }
    }

private:
    std::vector<T> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace dampresp::detail
