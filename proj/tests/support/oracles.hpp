#pragma once

#include "cedec/decoder.hpp"
#include "cedec/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace cedec::testing {

/// Mean binary cross-entropy written out directly from sigmoid(-o).
inline double direct_loss(std::span<const double> o, std::span<const std::uint8_t> target) {
    double acc = 0.0;
    for (std::size_t j = 0; j < o.size(); ++j) {
        const double p1 = 1.0 / (1.0 + std::exp(o[j]));
        acc -= target[j] ? std::log(p1) : std::log1p(-p1);
    }
    return acc / static_cast<double>(o.size());
}

struct GradientCheck {
    std::size_t checked = 0;
    double max_relative_error = 0.0;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
};

/// Relative error with a floor on the denominator, so that weights whose
/// gradient is numerically zero are compared on an absolute scale.
inline constexpr double kGradientFloor = 1e-6;

inline double relative_error(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kGradientFloor});
}

/// Central finite differences of the loss for every parameter of `bank`,
/// compared with `analytic`.
inline GradientCheck finite_difference_check(const TannerGraph& graph, const WeightBank& bank,
                                             std::span<const double> llr, std::span<const std::uint8_t> target,
                                             const WeightBank& analytic, double h = 1e-4) {
    GradientCheck out;
    WeightBank probe = bank;
    auto params = probe.params();
    const auto grad = analytic.params();
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double w = params[k];
        params[k] = w + h;
        const double up = direct_loss(neural_bp_decode(graph, probe, llr), target);
        params[k] = w - h;
        const double down = direct_loss(neural_bp_decode(graph, probe, llr), target);
        params[k] = w;
        const double numeric = (up - down) / (2 * h);
        const double err = relative_error(grad[k], numeric);
        ++out.checked;
        if (err > out.max_relative_error || out.checked == 1) {
            out.max_relative_error = std::max(out.max_relative_error, err);
            out.worst_index = k;
            out.worst_analytic = grad[k];
            out.worst_numeric = numeric;
        }
    }
    return out;
}

}  // namespace cedec::testing
