#include "dirstat/wrapped_tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "dirstat/errors.hpp"
#include "dirstat/quadrature.hpp"

namespace dirstat::wrapped {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

// Log of a bound on Σ_{r ≥ r_min} r^e exp(-r²/2σ²) over a set with at most two
// radii per window of length 2π. Returns +inf when the terms are not yet
// decreasing (no certificate available).
double log_gaussian_tail_bound(double r_min, int exponent, double sigma2) {
    if (r_min * r_min < sigma2 * exponent) return kInf;
    const double growth = exponent == 0 ? 0.0 : exponent * std::log1p(kTwoPi / r_min);
    const double log_rho = growth - (2.0 * kTwoPi * r_min + kTwoPi * kTwoPi) / (2.0 * sigma2);
    if (log_rho >= 0.0) return kInf;
    const double log_term = (exponent == 0 ? 0.0 : exponent * std::log(r_min)) - r_min * r_min / (2.0 * sigma2);
    return std::numbers::ln2 + log_term - std::log(-std::expm1(log_rho));
}

void check_sigma2(double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("sigma^2 must be positive and finite");
}

void check_truncation(const Truncation& t) {
    if (t.max_k < 0) throw DomainError("max_k must be nonnegative");
    if (!(t.tail_tolerance > 0.0)) throw DomainError("tail_tolerance must be positive");
}

// log Σ_k [r1 e^{-r1²/2σ²} + r2 e^{-r2²/2σ²}] for θ ∈ [0, π].
double log_colatitude_series(double sigma2, double theta, const Truncation& truncation) {
    check_sigma2(sigma2);
    check_truncation(truncation);
    const auto log_term = [&](double r) { return r > 0.0 ? std::log(r) - r * r / (2.0 * sigma2) : -kInf; };
    double log_sum = -kInf;
    const double log_tol = std::log(truncation.tail_tolerance);
    for (int k = 0; k <= truncation.max_k; ++k) {
        const WrappedSeriesTerm t = series_term(k, theta);
        log_sum = log_sum_exp(log_sum, log_sum_exp(log_term(t.r1), log_term(t.r2)));
        const double bound = log_gaussian_tail_bound(theta + kTwoPi * (k + 1), 1, sigma2);
        if (bound <= log_tol + log_sum) return log_sum;
    }
    throw ConvergenceError("wrapped colatitude series did not reach its tail tolerance within max_k terms");
}

}  // namespace

WrappedSpec::WrappedSpec(int q, TangentDensity g, std::optional<double> sigma2, Truncation truncation)
    : q_(q), g_(std::move(g)), sigma2_(sigma2), truncation_(truncation) {
    if (q_ < 2) throw DomainError("wrapped spec needs q >= 2");
    check_truncation(truncation_);
    if (!g_) throw DomainError("tangent density must be callable");
}

WrappedSpec WrappedSpec::normal(int q, double sigma2, Truncation truncation) {
    check_sigma2(sigma2);
    return WrappedSpec(q, normal_tangent_density(q - 1, sigma2), sigma2, truncation);
}

WrappedSpec WrappedSpec::general(int q, TangentDensity g, Truncation truncation) {
    return WrappedSpec(q, std::move(g), std::nullopt, truncation);
}

WrappedSpec WrappedSpec::with_base(const UnitVector& base) const {
    if (base.ambient_dim() != q_) throw DimensionMismatch("base point dimension differs from q");
    WrappedSpec copy = *this;
    copy.base_ = base;
    return copy;
}

WrappedSeriesTerm series_term(int k, double theta) {
    return {k, theta + kTwoPi * k, kTwoPi * (k + 1) - theta};
}

double WrappedDensityValue::value() const { return divergent ? kInf : finite_part; }

TangentDensity normal_tangent_density(int dim, double sigma2) {
    check_sigma2(sigma2);
    const double log_c = -0.5 * dim * std::log(kTwoPi * sigma2);
    return [log_c, sigma2](const Eigen::VectorXd& x) { return std::exp(log_c - x.squaredNorm() / (2.0 * sigma2)); };
}

WrappedDensityValue wrapped_sphere_density(const WrappedSpec& spec, const UnitVector& y) {
    const int q = spec.q();
    if (y.ambient_dim() != q) throw DimensionMismatch("point dimension differs from the wrapped spec");
    const Eigen::VectorXd local = spec.base()
        ? Eigen::VectorXd(geometry::rotation_from_north_pole(*spec.base()).transpose() * y.coords())
        : y.coords();
    const int m = q - 1;
    const int exponent = q - 2;
    const Eigen::VectorXd head = local.head(m);
    const double s = head.norm();
    const double theta = std::atan2(s, local(m));
    const TangentDensity& g = spec.tangent_density();

    WrappedDensityValue out;
    Eigen::VectorXd v(m);
    if (s == 0.0) {
        if (exponent > 0) {
            out.divergent = true;
            out.terms = 1;
            out.finite_part = local(m) > 0.0 ? g(Eigen::VectorXd::Zero(m)) : 0.0;
            return out;
        }
        v(0) = 1.0;
    } else {
        v = head / s;
    }

    const Truncation& trunc = spec.truncation();
    const auto radial = [&](double r) { return exponent == 0 ? 1.0 : std::pow(r, exponent); };
    double sum = 0.0;
    double tail = kInf;
    bool converged = false;
    for (int k = 0; k <= trunc.max_k; ++k) {
        const WrappedSeriesTerm t = series_term(k, theta);
        const double pair = radial(t.r1) * g(t.r1 * v) + radial(t.r2) * g(-t.r2 * v);
        sum += pair;
        out.terms = k + 1;
        if (spec.sigma2()) {
            const double sigma2 = *spec.sigma2();
            const double log_c = -0.5 * m * std::log(kTwoPi * sigma2);
            tail = std::exp(log_c + log_gaussian_tail_bound(theta + kTwoPi * (k + 1), exponent, sigma2));
        } else if (k >= 1) {
            tail = pair;
        }
        if (tail <= trunc.tail_tolerance * sum || tail < std::numeric_limits<double>::min()) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("wrapped sphere series did not reach its tail tolerance within max_k terms");
    const double prefactor = exponent == 0 ? 1.0 : std::pow(s, -exponent);
    out.finite_part = prefactor * sum;
    out.tail_bound = prefactor * tail;
    return out;
}

double log_wrapped_colatitude_density(double sigma2, double theta, const Truncation& truncation) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError("colatitude curve is singular at 0 and pi; need 0 < theta < pi");
    return log_colatitude_series(sigma2, theta, truncation) - std::log(std::sin(theta));
}

double wrapped_colatitude_density(double sigma2, double theta, const Truncation& truncation) {
    return std::exp(log_wrapped_colatitude_density(sigma2, theta, truncation));
}

double wrapped_colatitude_marginal(double sigma2, double theta, const Truncation& truncation) {
    if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("colatitude must lie in [0, pi]");
    return std::exp(log_colatitude_series(sigma2, theta, truncation) - std::log(sigma2));
}

double wrapped_circle_arc_density(const LineDensity& g, double theta_star, const Truncation& truncation) {
    check_truncation(truncation);
    double sum = 0.0;
    for (int k = 0; k <= truncation.max_k; ++k) {
        const double pair = g(theta_star + kTwoPi * k) + g(theta_star - kTwoPi * (k + 1));
        sum += pair;
        if (k >= 1 && (pair <= truncation.tail_tolerance * sum || pair < std::numeric_limits<double>::min())) {
            return sum;
        }
    }
    throw ConvergenceError("wrapped circle series did not reach its tail tolerance within max_k terms");
}

double wrapped_circle_density(const LineDensity& g, double theta, const Truncation& truncation) {
    if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("colatitude must lie in [0, pi]");
    return wrapped_circle_arc_density(g, theta, truncation) + wrapped_circle_arc_density(g, -theta, truncation);
}

WrappedDensityValue wrapped_so3_density(const WrappedSpec& spec, const RotationElement& rot) {
    if (spec.q() != 4) throw DimensionMismatch("SO(3) densities are wrapped on S^3 (q = 4)");
    const UnitVector y = geometry::quaternion_to_sphere_point(rot.quat());
    const WrappedDensityValue a = wrapped_sphere_density(spec, y);
    const WrappedDensityValue b = wrapped_sphere_density(spec, -y);
    WrappedDensityValue out;
    out.finite_part = a.finite_part + b.finite_part;
    out.divergent = a.divergent || b.divergent;
    out.terms = std::max(a.terms, b.terms);
    out.tail_bound = a.tail_bound + b.tail_bound;
    return out;
}

int ModeReport::dominant_count(double mass_threshold) const {
    return static_cast<int>(std::count_if(regions.begin(), regions.end(),
                                          [&](const ModeRegion& r) { return r.mass >= mass_threshold; }));
}

ModeReport mode_count(double sigma2, int grid_points) {
    check_sigma2(sigma2);
    if (grid_points < 3) throw DomainError("mode scan needs at least three grid points");
    const int n = grid_points;
    std::vector<double> theta(n);
    std::vector<double> log_f(n);
    for (int i = 0; i < n; ++i) {
        theta[i] = kPi * (i + 0.5) / n;
        log_f[i] = log_wrapped_colatitude_density(sigma2, theta[i]);
    }
    // Slope signs with plateaus inheriting the previous nonzero sign.
    std::vector<int> sign(n - 1, 0);
    int last = 0;
    for (int i = 0; i + 1 < n; ++i) {
        const double d = log_f[i + 1] - log_f[i];
        sign[i] = d > 0.0 ? 1 : (d < 0.0 ? -1 : last);
        if (sign[i] != 0) last = sign[i];
    }

    ModeReport report;
    report.grid_points = n;
    const auto refine = [&](int i, bool maximize) {
        const double lo = theta[std::max(i - 1, 0)];
        const double hi = theta[std::min(i + 1, n - 1)];
        const auto objective = [&](double t) {
            const double v = log_wrapped_colatitude_density(sigma2, t);
            return maximize ? -v : v;
        };
        return boost::math::tools::brent_find_minima(objective, lo, hi, 40).first;
    };
    for (int i = 1; i + 1 < n; ++i) {
        if (sign[i - 1] > 0 && sign[i] < 0) report.interior_maxima.push_back(refine(i, true));
        if (sign[i - 1] < 0 && sign[i] > 0) report.interior_minima.push_back(refine(i, false));
    }

    const auto first_nonzero = std::find_if(sign.begin(), sign.end(), [](int s) { return s != 0; });
    const auto last_nonzero = std::find_if(sign.rbegin(), sign.rend(), [](int s) { return s != 0; });
    const bool left_mode = first_nonzero != sign.end() && *first_nonzero < 0;
    const bool right_mode = last_nonzero != sign.rend() && *last_nonzero > 0;

    std::vector<double> bounds{0.0};
    bounds.insert(bounds.end(), report.interior_minima.begin(), report.interior_minima.end());
    bounds.push_back(kPi);
    std::size_t next_max = 0;
    quadrature::QuadratureOptions qopts;
    qopts.relative_tolerance = 1e-9;
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
        ModeRegion region;
        region.lo = bounds[j];
        region.hi = bounds[j + 1];
        if (j == 0 && left_mode) {
            region.endpoint = Endpoint::Left;
            region.peak_theta = 0.0;
        } else if (j + 2 == bounds.size() && right_mode) {
            region.endpoint = Endpoint::Right;
            region.peak_theta = kPi;
        } else if (next_max < report.interior_maxima.size()) {
            region.peak_theta = report.interior_maxima[next_max++];
        } else {
            continue;
        }
        region.mass = quadrature::integrate([&](double t) { return wrapped_colatitude_marginal(sigma2, t); },
                                            region.lo, region.hi, qopts)
                          .value;
        report.regions.push_back(region);
    }
    return report;
}

}  // namespace dirstat::wrapped
