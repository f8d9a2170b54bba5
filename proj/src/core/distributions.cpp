#include "dirstat/distributions.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dirstat/errors.hpp"
#include "dirstat/quadrature.hpp"
#include "dirstat/random.hpp"
#include "dirstat/sampling.hpp"
#include "dirstat/special_functions.hpp"

namespace dirstat::dist {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

constexpr double kPi = std::numbers::pi;

void check_count_and_range(double x, int n) {
    if (n < 1) throw DomainError("sample size must be >= 1");
    if (!(std::abs(x) <= n)) throw DomainError("|x| must not exceed n");
}

}  // namespace

const char* to_string(BaseMeasure m) {
    switch (m) {
        case BaseMeasure::SurfaceLebesgue: return "surface-lebesgue";
        case BaseMeasure::IntervalLebesgue: return "interval-lebesgue";
        case BaseMeasure::NormalizedHaar: return "normalized-haar";
    }
    return "unknown";
}

VmfParams::VmfParams(UnitVector mu, double kappa) : mu_(std::move(mu)), kappa_(kappa) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be finite and nonnegative");
}

BinghamParams::BinghamParams(Eigen::MatrixXd a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() < 2) throw DomainError("Bingham parameter must be a square matrix");
    if (!a_.allFinite() || (a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw DomainError("Bingham parameter matrix must be symmetric");
    }
}

LogDensity vmf_log_density(const VmfParams& params, const UnitVector& x) {
    const double cosine = params.mu().dot(x);
    return {special::vmf_log_normalizer(params.sphere_dim(), params.kappa()) + params.kappa() * cosine,
            BaseMeasure::SurfaceLebesgue};
}

Density fisher_colatitude_density(double kappa, double theta) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("colatitude must lie in [0, pi]");
    const double s = std::sin(theta);
    if (s <= 0.0) return {0.0, BaseMeasure::IntervalLebesgue};
    const double log_value = special::log_cos_marginal_normalizer(kappa) + kappa * std::cos(theta) + std::log(s);
    return {std::exp(log_value), BaseMeasure::IntervalLebesgue};
}

double fisher_colatitude_mode(double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    if (kappa == 0.0) return 0.5 * kPi;
    // κc² + c - κ = 0 with c = cos θ; rationalized to avoid cancellation.
    const double c = 2.0 * kappa / (1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa));
    return std::acos(c);
}

double suff_stat_polynomial(double x, int n) {
    check_count_and_range(x, n);
    if (n > kMaxExactLawSize) {
        throw DomainError("exact law of the sufficient statistic is supported for N <= 30 only");
    }
    // N = 1 is the uniform law of cos θ on the closed interval; the sum would read 0^0 as 0 at x = 1.
    if (n == 1) return 1.0;
    const Extended big_n = n;
    const Extended ex = x;
    Extended sum = 0;
    Extended binom = 1;
    for (int r = 0; r <= n; ++r) {
        const Extended base = big_n - 2 * r - ex;
        if (!(base > 0)) break;
        const Extended term = binom * boost::multiprecision::pow(base, n - 1);
        sum += (r % 2 == 0) ? term : Extended(-term);
        binom = binom * (n - r) / (r + 1);
    }
    Extended factorial = 1;
    for (int k = 2; k < n; ++k) factorial *= k;
    const double value = static_cast<double>(sum / factorial);
    return value > 0.0 ? value : 0.0;
}

Density suff_stat_density(double x, int n, double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    const double poly = suff_stat_polynomial(x, n);
    if (poly == 0.0) return {0.0, BaseMeasure::IntervalLebesgue};
    const double log_value = n * special::log_cos_marginal_normalizer(kappa) + kappa * x + std::log(poly);
    return {std::exp(log_value), BaseMeasure::IntervalLebesgue};
}

Density axial_suff_stat_density(double x, int n, double kappa) {
    if (!(kappa >= 0.0)) throw DomainError("kappa must be nonnegative");
    const double poly = suff_stat_polynomial(x, n);
    if (poly == 0.0) return {0.0, BaseMeasure::IntervalLebesgue};
    // log(2 cosh(κx)) = κ|x| + log1p(e^{-2κ|x|})
    const double ax = kappa * std::abs(x);
    const double log_two_cosh = ax + std::log1p(std::exp(-2.0 * ax));
    const double log_value = n * special::log_cos_marginal_normalizer(kappa) + log_two_cosh + std::log(poly);
    return {std::exp(log_value), BaseMeasure::IntervalLebesgue};
}

LogDensity bingham_log_density(const BinghamParams& params, const UnitVector& x, double normalizer) {
    if (x.ambient_dim() != params.a_matrix().rows()) throw DimensionMismatch("Bingham matrix and point differ in dimension");
    if (!(normalizer > 0.0)) throw DomainError("Bingham normalizer must be positive");
    const Eigen::VectorXd& v = x.coords();
    return {-v.dot(params.a_matrix() * v) - std::log(normalizer), BaseMeasure::SurfaceLebesgue};
}

double bingham_normalizer(const BinghamParams& params) {
    const Eigen::MatrixXd& a = params.a_matrix();
    if (a.rows() != 3) throw DomainError("Bingham normalizer is implemented for q = 3 only");
    // Shift by the smallest eigenvalue so the integrand is bounded by one.
    const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
    const Eigen::MatrixXd shifted = a - lambda_min * Eigen::MatrixXd::Identity(3, 3);
    const auto integrand = [&](const UnitVector& x) {
        const Eigen::VectorXd& v = x.coords();
        return std::exp(-v.dot(shifted * v));
    };
    quadrature::QuadratureOptions options;
    options.relative_tolerance = 1e-10;
    return std::exp(-lambda_min) * quadrature::integrate_sphere(integrand, options).value;
}

LogDensity matrix_fisher_log_density(const MatrixFisherParams& params, const RotationElement& rot,
                                     const MatrixFisherNormalizer& normalizer) {
    if (!(normalizer.value > 0.0)) throw DomainError("matrix Fisher normalizer must be positive");
    return {(params.f_matrix.transpose() * rot.matrix()).trace() - std::log(normalizer.value),
            BaseMeasure::NormalizedHaar};
}

MatrixFisherNormalizer matrix_fisher_normalizer(const MatrixFisherParams& params, std::size_t samples,
                                                sampling::SeededStream stream) {
    if (samples < 2) throw DomainError("matrix Fisher Monte Carlo needs at least two samples");
    if (params.f_matrix.isZero(0.0)) return {1.0, 0.0, samples};
    // Welford accumulation of exp(tr(FᵀX)).
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const RotationElement x = sampling::sample_haar_so3_one(stream);
        const double value = std::exp((params.f_matrix.transpose() * x.matrix()).trace());
        const double delta = value - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (value - mean);
    }
    const double variance = m2 / static_cast<double>(samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

Density fiducial_conditional_density(const FiducialSpec& spec, double theta_hat) {
    if (spec.n < 1) throw DomainError("fiducial spec needs n >= 1");
    if (!(spec.rho >= 0.0) || !(spec.rbar >= 0.0)) throw DomainError("rho and rbar must be nonnegative");
    const double kappa = spec.n * spec.rbar * spec.rho;
    const double log_value = kappa * std::cos(theta_hat - spec.theta0) - std::log(2.0 * kPi) -
                             special::log_bessel_i(0.0, kappa);
    return {std::exp(log_value), BaseMeasure::IntervalLebesgue};
}

}  // namespace dirstat::dist
