#pragma once

// Seeded samples whose mean vector equals a prescribed target. Used to build
// stand-ins for datasets known only through printed aggregates: because
// (n, Σ yᵢ) is sufficient for every von Mises-Fisher fit and test in this
// library, such a sample reproduces those results exactly.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dirstat/geometry.hpp"

namespace dirstat::analysis {

struct SurrogateTarget {
    std::size_t n = 0;
    Eigen::VectorXd mean_vector;  ///< target x̄, with 0 < ‖x̄‖ < 1
};

/// Draws vMF(x̄/‖x̄‖, A_p^{-1}(‖x̄‖)) from stream (seed, 0), then alternately
/// rotates the sample mean onto the target direction and rescales
/// colatitudes about it until ‖x̄_sample - x̄‖ ≤ tolerance.
[[nodiscard]] std::vector<geometry::UnitVector> resultant_matched_sample(const SurrogateTarget& target,
                                                                         std::uint64_t seed,
                                                                         double tolerance = 1e-14);

}  // namespace dirstat::analysis
