#include "dirstat/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dirstat::quadrature {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    QuadratureResult result;
    result.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, options.max_depth, options.relative_tolerance, &result.error_estimate);
    return result;
}

QuadratureResult integrate_sphere(const std::function<double(const geometry::UnitVector&)>& f,
                                  const QuadratureOptions& options) {
    double inner_error = 0.0;
    const auto over_phi = [&](double z) {
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const auto integrand = [&](double phi) {
            return f(geometry::UnitVector{s * std::cos(phi), s * std::sin(phi), z});
        };
        const QuadratureResult r = integrate(integrand, 0.0, kTwoPi, options);
        inner_error = std::max(inner_error, r.error_estimate);
        return r.value;
    };
    QuadratureResult outer = integrate(over_phi, -1.0, 1.0, options);
    outer.error_estimate += inner_error;
    return outer;
}

QuadratureResult integrate_circle(const std::function<double(const geometry::UnitVector&)>& f,
                                  const QuadratureOptions& options) {
    return integrate([&](double t) { return f(geometry::UnitVector{std::cos(t), std::sin(t)}); }, 0.0, kTwoPi,
                     options);
}

}  // namespace dirstat::quadrature
