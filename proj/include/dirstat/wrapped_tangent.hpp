#pragma once

// Wrapped tangent distributions: a density g on the tangent space at the
// north pole of S^{q-1} pushed through the exponential map. With
// y = (sin θ · v, cos θ) the density with respect to surface measure is
//
//   f(y) = sin^{-(q-2)} θ · Σ_{k≥0} [ r1^{q-2} g(r1 v) + r2^{q-2} g(-r2 v) ],
//   r1 = θ + 2πk,  r2 = 2π(k+1) - θ.
//
// For q ≥ 3 every term except r1 at k = 0 blows up at θ = 0, and all of them
// blow up at θ = π, so evaluations at the poles return a finite part and a
// divergence flag instead of a raw infinity.

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dirstat/distributions.hpp"
#include "dirstat/geometry.hpp"

namespace dirstat::wrapped {

using geometry::RotationElement;
using geometry::UnitVector;

/// Density on R^{q-1}. Must be safe to call concurrently.
using TangentDensity = std::function<double(const Eigen::VectorXd&)>;
/// Density on the real line, for the circular fold.
using LineDensity = std::function<double(double)>;

struct Truncation {
    int max_k = 20;
    double tail_tolerance = 1e-12;  ///< relative to the partial sum
};

class WrappedSpec {
public:
    /// Isotropic N(0, σ² I_{q-1}) tangent density.
    static WrappedSpec normal(int q, double sigma2, Truncation truncation = {});
    /// Arbitrary tangent density; convergence is judged from the size of the last pair.
    static WrappedSpec general(int q, TangentDensity g, Truncation truncation = {});

    /// Same spec with the exponential map based at `base` instead of the north pole.
    [[nodiscard]] WrappedSpec with_base(const UnitVector& base) const;

    [[nodiscard]] int q() const noexcept { return q_; }
    [[nodiscard]] const std::optional<double>& sigma2() const noexcept { return sigma2_; }
    [[nodiscard]] const TangentDensity& tangent_density() const noexcept { return g_; }
    [[nodiscard]] const Truncation& truncation() const noexcept { return truncation_; }
    [[nodiscard]] const std::optional<UnitVector>& base() const noexcept { return base_; }

private:
    WrappedSpec(int q, TangentDensity g, std::optional<double> sigma2, Truncation truncation);
    int q_;
    TangentDensity g_;
    std::optional<double> sigma2_;
    Truncation truncation_;
    std::optional<UnitVector> base_;
};

struct WrappedSeriesTerm {
    int k = 0;
    double r1 = 0.0;
    double r2 = 0.0;
};

[[nodiscard]] WrappedSeriesTerm series_term(int k, double theta);

/// Result of a wrapped-density evaluation. `finite_part` is the whole value
/// when `divergent` is false; at a singular pole it is the finite limit of the
/// term that has one (g(0) at θ = 0, nothing at θ = π).
struct WrappedDensityValue {
    double finite_part = 0.0;
    bool divergent = false;
    int terms = 0;            ///< number of k values summed
    double tail_bound = 0.0;  ///< bound (normal g) or estimate (general g) of the omitted mass, same scale as finite_part
    dist::BaseMeasure base = dist::BaseMeasure::SurfaceLebesgue;

    [[nodiscard]] double value() const;
};

/// N(0, σ² I_dim) density.
[[nodiscard]] TangentDensity normal_tangent_density(int dim, double sigma2);

[[nodiscard]] WrappedDensityValue wrapped_sphere_density(const WrappedSpec& spec, const UnitVector& y);

/// The colatitude curve of the q = 3 normal case, exactly as the lattice sum
///   sin^{-1} θ · Σ [ r1 e^{-r1²/2σ²} + r2 e^{-r2²/2σ²} ],
/// i.e. 2πσ² times the surface density at colatitude θ. Interior θ only.
[[nodiscard]] double wrapped_colatitude_density(double sigma2, double theta, const Truncation& truncation = {});
[[nodiscard]] double log_wrapped_colatitude_density(double sigma2, double theta, const Truncation& truncation = {});

/// The probability density of θ itself for the q = 3 normal case:
/// sin θ / σ² times the curve above. Finite on all of [0, π].
[[nodiscard]] double wrapped_colatitude_marginal(double sigma2, double theta, const Truncation& truncation = {});

/// Standard wrapped density on the full circle, θ* ∈ (-π, π]: Σ_{k∈Z} g(θ* + 2πk).
[[nodiscard]] double wrapped_circle_arc_density(const LineDensity& g, double theta_star, const Truncation& truncation = {});

/// Density of the colatitude θ = |θ*| ∈ [0, π] on S^1: the q = 2 construction
/// summed over both tangent directions v = ±1.
[[nodiscard]] double wrapped_circle_density(const LineDensity& g, double theta, const Truncation& truncation = {});

/// Wrapped density on SO(3) through S³ (q = 4), folding the quaternion and its antipode.
[[nodiscard]] WrappedDensityValue wrapped_so3_density(const WrappedSpec& spec, const RotationElement& rot);

enum class Endpoint { None, Left, Right };

/// A maximal stretch of (0, π) between consecutive interior minima of the
/// colatitude curve, holding one mode (interior maximum or an endpoint).
struct ModeRegion {
    double lo = 0.0;
    double hi = 0.0;
    double peak_theta = 0.0;
    Endpoint endpoint = Endpoint::None;
    double mass = 0.0;  ///< probability of θ ∈ [lo, hi] under the colatitude marginal
};

struct ModeReport {
    std::vector<double> interior_maxima;
    std::vector<double> interior_minima;
    std::vector<ModeRegion> regions;
    bool left_divergent = true;   ///< the curve diverges as θ → 0⁺
    bool right_divergent = true;  ///< the curve diverges as θ → π⁻
    int grid_points = 0;

    /// Number of rising regions, endpoint divergences counted as modes.
    [[nodiscard]] int count() const { return static_cast<int>(regions.size()); }
    /// Regions holding at least `mass_threshold` of the probability.
    [[nodiscard]] int dominant_count(double mass_threshold = 0.01) const;
    [[nodiscard]] bool unimodal_interior() const { return interior_minima.empty(); }
};

/// Scans the colatitude curve on a uniform grid of (0, π), locating sign
/// changes of its slope and refining each by golden-section search.
[[nodiscard]] ModeReport mode_count(double sigma2, int grid_points = 10000);

}  // namespace dirstat::wrapped
