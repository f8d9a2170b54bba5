#include "dirstat/analysis/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirstat/distributions.hpp"
#include "dirstat/errors.hpp"
#include "dirstat/random.hpp"
#include "dirstat/sampling.hpp"
#include "dirstat/special_functions.hpp"

namespace dirstat::analysis {

namespace {

using geometry::UnitVector;

Eigen::VectorXd mean_of(const std::vector<UnitVector>& xs) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(xs.front().ambient_dim());
    for (const UnitVector& x : xs) m += x.coords();
    return m / static_cast<double>(xs.size());
}

// Colatitudes about the north pole multiplied by s, longitudes kept.
std::vector<UnitVector> scale_about_pole(const std::vector<Eigen::VectorXd>& local, double s) {
    std::vector<UnitVector> out;
    out.reserve(local.size());
    for (const Eigen::VectorXd& z : local) {
        const int q = static_cast<int>(z.size());
        const double theta = std::acos(std::clamp(z(q - 1), -1.0, 1.0));
        const Eigen::VectorXd tangent = z.head(q - 1);
        const double tn = tangent.norm();
        Eigen::VectorXd y(q);
        if (tn == 0.0) {
            y = z;
        } else {
            y.head(q - 1) = (std::sin(s * theta) / tn) * tangent;
            y(q - 1) = std::cos(s * theta);
        }
        out.emplace_back(y);
    }
    return out;
}

}  // namespace

std::vector<UnitVector> resultant_matched_sample(const SurrogateTarget& target, std::uint64_t seed, double tolerance) {
    if (target.n < 2) throw DomainError("surrogate needs n >= 2");
    const double rbar = target.mean_vector.norm();
    if (!(rbar > 0.0 && rbar < 1.0)) throw DomainError("target mean resultant length must lie in (0, 1)");
    const int q = static_cast<int>(target.mean_vector.size());
    const UnitVector direction(target.mean_vector);
    const Eigen::MatrixXd frame = geometry::rotation_from_north_pole(direction);

    sampling::SeededStream stream(seed, 0);
    const dist::VmfParams params(direction, special::inverse_mean_resultant(q - 1, rbar));
    std::vector<UnitVector> xs = sampling::sample_vmf(params, target.n, stream);

    for (int iter = 0; iter < 100; ++iter) {
        // Rotate the current mean direction onto the target direction.
        const UnitVector current(mean_of(xs));
        const Eigen::MatrixXd align = frame * geometry::rotation_from_north_pole(current).transpose();
        std::vector<Eigen::VectorXd> local;
        local.reserve(xs.size());
        double theta_max = 0.0;
        for (const UnitVector& x : xs) {
            local.push_back(frame.transpose() * (align * x.coords()));
            theta_max = std::max(theta_max, std::acos(std::clamp(local.back()(q - 1), -1.0, 1.0)));
        }
        // Bisect the colatitude scale so that the pole component of the mean equals R̄.
        const auto pole_component = [&](double s) {
            double c = 0.0;
            for (const Eigen::VectorXd& z : local) c += std::cos(s * std::acos(std::clamp(z(q - 1), -1.0, 1.0)));
            return c / static_cast<double>(local.size());
        };
        double lo = 0.0;
        double hi = theta_max > 0.0 ? std::numbers::pi / theta_max : 1.0;
        if (pole_component(hi) > rbar) throw ConvergenceError("surrogate cannot reach the target dispersion");
        for (int k = 0; k < 200 && hi - lo > 1e-16 * hi; ++k) {
            const double mid = 0.5 * (lo + hi);
            (pole_component(mid) > rbar ? lo : hi) = mid;
        }
        std::vector<UnitVector> scaled = scale_about_pole(local, 0.5 * (lo + hi));
        for (UnitVector& y : scaled) y = geometry::rotate(frame, y);
        xs = std::move(scaled);
        if ((mean_of(xs) - target.mean_vector).norm() <= tolerance) return xs;
    }
    throw ConvergenceError("surrogate mean vector did not reach the target");
}

}  // namespace dirstat::analysis
