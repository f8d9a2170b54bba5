#pragma once

// Modified Bessel functions of the first kind and the quantities built on
// them: the mean resultant function A_p, its inverse, and the normalizing
// constants of the von Mises-Fisher family.
//
// Orders are real with ν ≥ -1/2. Half-integer orders are evaluated through
// the closed hyperbolic forms (equivalently the terminating large-argument
// series); other orders use the ascending power series for small arguments
// and the large-argument expansion once it is accurate to double precision.

namespace dirstat::special {

/// Options for the monotone root finders.
struct RootOptions {
    double tolerance = 1e-10;  ///< bound on the estimating-equation residual
    int max_iterations = 200;
};

/// Root plus the diagnostics callers surface in fit reports.
struct RootResult {
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

/// I_ν(x); throws OverflowError when the value exceeds the double range.
[[nodiscard]] double bessel_i(double nu, double x);

/// log I_ν(x). Finite for every x up to at least 1e5. Returns -inf for
/// ν > 0 at x = 0.
[[nodiscard]] double log_bessel_i(double nu, double x);

/// log(I_ν(x) e^{-x}); the natural quantity for ratios at large x.
[[nodiscard]] double log_bessel_i_scaled(double nu, double x);

/// A_p(κ) = I_{(p+1)/2}(κ) / I_{(p-1)/2}(κ) on S_p, p ≥ 1.
/// p = 2 takes the coth κ - 1/κ path.
[[nodiscard]] double mean_resultant_fn(int p, double kappa);

/// Generic Bessel-ratio evaluation of A_p with no p = 2 shortcut.
[[nodiscard]] double mean_resultant_ratio(int p, double kappa);

/// coth κ - 1/κ, stable down to κ = 0.
[[nodiscard]] double langevin(double kappa);

/// dA_p/dκ = 1 - A_p² - (p/κ) A_p.
[[nodiscard]] double mean_resultant_derivative(int p, double kappa);

/// Solves A_p(κ) = R̄ for κ ≥ 0 by safeguarded Newton iteration.
/// R̄ ≥ 1 throws DegenerateSampleError (κ = ∞); R̄ < 0 throws DomainError.
[[nodiscard]] RootResult inverse_mean_resultant_solve(int p, double rbar, const RootOptions& options = {});

[[nodiscard]] double inverse_mean_resultant(int p, double rbar, const RootOptions& options = {});

/// log c_p(κ) with c_p(κ) = κ^{(p-1)/2} / ((2π)^{(p+1)/2} I_{(p-1)/2}(κ)).
/// At κ = 0 this is -log |S_p|.
[[nodiscard]] double vmf_log_normalizer(int p, double kappa);

/// log of the surface area of S_p ⊂ R^{p+1}.
[[nodiscard]] double log_sphere_area(int p);

/// B(κ) = κ / (2 sinh κ), normalizer of the density of cos θ on [-1, 1].
/// Note B(κ) = 2π c_2(κ): B normalizes the cos θ marginal, c_2 the surface density.
[[nodiscard]] double cos_marginal_normalizer(double kappa);

[[nodiscard]] double log_cos_marginal_normalizer(double kappa);

/// log sinh x for x ≥ 0 without overflow.
[[nodiscard]] double log_sinh(double x);

}  // namespace dirstat::special
