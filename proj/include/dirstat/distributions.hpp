#pragma once

// Densities of the directional family: von Mises-Fisher, Bingham, matrix
// Fisher, Fisher's laws for the known-pole and known-axis sufficient
// statistic, and the von Mises conditional law of an estimated direction.
//
// Every evaluation carries the base measure it is a density with respect to.
// The cos θ marginal (normalizer B(κ)) and the surface density (c_2(κ)) differ
// by a factor 2π, which is exactly the kind of slip the tag guards against.

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "dirstat/geometry.hpp"

namespace dirstat::sampling {
class SeededStream;
}

namespace dirstat::dist {

using geometry::RotationElement;
using geometry::UnitVector;

enum class BaseMeasure {
    SurfaceLebesgue,   ///< surface measure on S_p (total mass |S_p|)
    IntervalLebesgue,  ///< Lebesgue measure on an interval of the real line
    NormalizedHaar,    ///< Haar probability measure on SO(3)
};

[[nodiscard]] const char* to_string(BaseMeasure m);

struct Density {
    double value = 0.0;
    BaseMeasure base = BaseMeasure::SurfaceLebesgue;
};

struct LogDensity {
    double value = 0.0;
    BaseMeasure base = BaseMeasure::SurfaceLebesgue;
};

class VmfParams {
public:
    VmfParams(UnitVector mu, double kappa);
    [[nodiscard]] const UnitVector& mu() const noexcept { return mu_; }
    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] int sphere_dim() const noexcept { return mu_.sphere_dim(); }

private:
    UnitVector mu_;
    double kappa_;
};

class BinghamParams {
public:
    /// Throws DomainError unless `a` is square and symmetric within 1e-12.
    explicit BinghamParams(Eigen::MatrixXd a);
    [[nodiscard]] const Eigen::MatrixXd& a_matrix() const noexcept { return a_; }

private:
    Eigen::MatrixXd a_;
};

struct MatrixFisherParams {
    Eigen::Matrix3d f_matrix = Eigen::Matrix3d::Zero();
};

/// Monte Carlo estimate of E_Haar[exp(tr(FᵀX))].
struct MatrixFisherNormalizer {
    double value = 1.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

struct FiducialSpec {
    int n = 1;
    double rbar = 0.0;
    double rho = 0.0;
    double theta0 = 0.0;
};

/// log c_p(κ) + κ μᵀx.
[[nodiscard]] LogDensity vmf_log_density(const VmfParams& params, const UnitVector& x);

/// (κ / (2 sinh κ)) e^{κ cos θ} sin θ on [0, π]; sin θ / 2 at κ = 0.
[[nodiscard]] Density fisher_colatitude_density(double kappa, double theta);

/// Mode of the colatitude density: the root of κ sin²θ = cos θ in [0, π/2].
[[nodiscard]] double fisher_colatitude_mode(double kappa);

/// P(x, N) = (1/(N-1)!) Σ_r (-1)^r C(N, r) (N - 2r - x)^{N-1}, summed over
/// r < (N - x)/2. Evaluated in 50-digit arithmetic; N ≤ 30.
[[nodiscard]] double suff_stat_polynomial(double x, int n);

inline constexpr int kMaxExactLawSize = 30;

/// g_N(x) = B(κ)^N e^{κx} P(x, N), the law of x = Σ cos θ_i under a known pole.
[[nodiscard]] Density suff_stat_density(double x, int n, double kappa);

/// 2 B(κ)^N cosh(κx) P(x, N) = g_N(x) + g_N(-x), the law used for a known axis.
/// As a density of |x| it integrates to one over [0, N].
[[nodiscard]] Density axial_suff_stat_density(double x, int n, double kappa);

/// -xᵀAx - log(normalizer).
[[nodiscard]] LogDensity bingham_log_density(const BinghamParams& params, const UnitVector& x, double normalizer);

/// ∫_{S_2} exp(-xᵀAx) dA by adaptive quadrature (q = 3 only).
[[nodiscard]] double bingham_normalizer(const BinghamParams& params);

/// tr(FᵀX) - log(normalizer), with respect to normalized Haar measure.
[[nodiscard]] LogDensity matrix_fisher_log_density(const MatrixFisherParams& params, const RotationElement& rot,
                                                   const MatrixFisherNormalizer& normalizer);

/// Haar Monte Carlo for the matrix Fisher constant; reports its standard error.
[[nodiscard]] MatrixFisherNormalizer matrix_fisher_normalizer(const MatrixFisherParams& params, std::size_t samples,
                                                              sampling::SeededStream stream);

/// exp{nR̄ρ cos(θ̂ - θ)} / (2π I_0(nR̄ρ)) on the circle.
[[nodiscard]] Density fiducial_conditional_density(const FiducialSpec& spec, double theta_hat);

}  // namespace dirstat::dist
