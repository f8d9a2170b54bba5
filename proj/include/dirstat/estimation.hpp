#pragma once

// Concentration and direction estimators for the von Mises-Fisher family,
// plus the likelihood-ratio test of a hypothesized mean direction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "dirstat/geometry.hpp"
#include "dirstat/special_functions.hpp"

namespace dirstat::estimation {

using geometry::AxialDirection;
using geometry::UnitVector;

/// Location summary of a sample: x̄ = R̄ x̄₀.
struct SampleSummary {
    std::size_t n = 0;
    Eigen::VectorXd mean_vector;
    std::optional<UnitVector> mean_direction;  ///< empty when R̄ = 0
    double mean_resultant_length = 0.0;
    std::optional<double> suff_stat_x;  ///< Σ μᵀyᵢ, only with a reference direction

    /// Throws DegenerateSampleError when R̄ = 0.
    [[nodiscard]] const UnitVector& direction() const;
};

/// Throws DomainError on an empty sample and DimensionMismatch on mixed dimensions.
[[nodiscard]] SampleSummary summarize(std::span<const UnitVector> sample,
                                      const std::optional<UnitVector>& reference = std::nullopt);

enum class FitMethod { MLE, SME, FisherKnownPole, FisherKnownAxis, AxialMLE };

[[nodiscard]] std::string_view to_string(FitMethod m);

struct FitDiagnostics {
    int iterations = 0;
    double residual = 0.0;
    bool sign_tie = false;  ///< axial fit: Σ νᵀyᵢ was exactly 0, λ̂ set to +1
};

struct FitResult {
    UnitVector mu_hat;
    double kappa_hat = 0.0;
    FitMethod method = FitMethod::MLE;
    FitDiagnostics diagnostics;
};

struct AxialFitResult {
    FitResult base;
    int lambda_hat = 1;
};

/// μ̂ = x̄₀, κ̂ = A_p^{-1}(R̄). R̄ = 0 and R̄ = 1 throw DegenerateSampleError.
[[nodiscard]] FitResult fit_mle(std::span<const UnitVector> sample, const special::RootOptions& options = {});

/// κ̂ = p Σ cos θᵢ / Σ sin² θᵢ about a known mean direction, clamped at 0.
[[nodiscard]] FitResult fit_sme(std::span<const UnitVector> sample, const UnitVector& mu_known);

/// Root of coth κ - 1/κ = x/n (κ̂ = 0 for x ≤ 0). Same root as A_2^{-1}(x/n).
[[nodiscard]] special::RootResult fit_fisher_known_pole(double x, int n, const special::RootOptions& options = {});

enum class KnownAxisEquation {
    /// coth κ - 1/κ = (x/n) tanh(κx): the stationary point of 2B(κ)^n cosh(κx) P(x, n).
    Stationary,
    /// coth κ - 1/κ = (x/n) tanh(κx/n): the argument scaled by 1/n.
    ScaledArgument,
};

/// Nonnegative root of the known-axis estimating equation; depends on x only through |x|.
[[nodiscard]] special::RootResult fit_fisher_known_axis(double x, int n,
                                                        KnownAxisEquation equation = KnownAxisEquation::Stationary,
                                                        const special::RootOptions& options = {});

/// Known-pole fit on raw observations (S_2 only): x = Σ μᵀyᵢ.
[[nodiscard]] FitResult fit_known_pole(std::span<const UnitVector> sample, const UnitVector& pole);

/// Known-axis fit on raw observations (S_2 only): x = Σ νᵀyᵢ with ν the axis representative.
[[nodiscard]] FitResult fit_known_axis(std::span<const UnitVector> sample, const AxialDirection& axis,
                                       KnownAxisEquation equation = KnownAxisEquation::Stationary);

/// λ̂ = sign(Σ νᵀyᵢ) (+1 on a tie), κ̂ from the known-pole equation at |Σ νᵀyᵢ|.
[[nodiscard]] AxialFitResult fit_axial_mle(std::span<const UnitVector> sample, const AxialDirection& axis);

struct MeanTestOptions {
    double level = 0.05;
    std::size_t bootstrap_replicates = 0;  ///< 0 disables the parametric bootstrap
    std::uint64_t seed = 0;
    unsigned threads = 0;  ///< 0 picks hardware concurrency
};

struct MeanDirectionTest {
    double statistic = 0.0;  ///< 2 (ℓ̂ - ℓ̂₀)
    int degrees_of_freedom = 0;
    double p_value = 1.0;  ///< asymptotic χ²_p
    std::optional<double> bootstrap_p_value;
    std::size_t bootstrap_replicates = 0;
    double level = 0.05;
    bool reject = false;  ///< decision from the asymptotic p-value
    std::optional<bool> bootstrap_reject;
    double kappa_hat = 0.0;   ///< unrestricted MLE
    double kappa_null = 0.0;  ///< profile MLE with μ = μ₀
    double angle_to_null = 0.0;
};

/// Likelihood-ratio test of H₀: μ = μ₀ with κ unknown.
[[nodiscard]] MeanDirectionTest test_mean_direction(std::span<const UnitVector> sample, const UnitVector& mu0,
                                                    const MeanTestOptions& options = {});

/// The likelihood-ratio statistic from sufficient statistics alone.
[[nodiscard]] double mean_direction_lr_statistic(std::size_t n, const Eigen::VectorXd& mean_vector,
                                                 const UnitVector& mu0);

}  // namespace dirstat::estimation
