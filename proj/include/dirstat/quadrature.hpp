#pragma once

// Adaptive numerical integration (Gauss-Kronrod 31-point, Boost.Math backend).

#include <functional>

#include "dirstat/geometry.hpp"

namespace dirstat::quadrature {

struct QuadratureOptions {
    double relative_tolerance = 1e-11;
    unsigned max_depth = 18;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// ∫_a^b f(t) dt.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureOptions& options = {});

/// ∫_{S_2} f dA, iterated over z = cos θ ∈ [-1, 1] and φ ∈ [0, 2π).
[[nodiscard]] QuadratureResult integrate_sphere(const std::function<double(const geometry::UnitVector&)>& f,
                                                const QuadratureOptions& options = {});

/// ∫_{S_1} f ds over the unit circle.
[[nodiscard]] QuadratureResult integrate_circle(const std::function<double(const geometry::UnitVector&)>& f,
                                                const QuadratureOptions& options = {});

}  // namespace dirstat::quadrature
