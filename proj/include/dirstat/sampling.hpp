#pragma once

// Random generation for the implemented distributions. Every sampler draws
// from a caller-owned SeededStream, so (seed, stream_id) fixes the output.

#include <cstddef>
#include <vector>

#include "dirstat/distributions.hpp"
#include "dirstat/geometry.hpp"
#include "dirstat/random.hpp"
#include "dirstat/wrapped_tangent.hpp"

namespace dirstat::sampling {

using geometry::RotationElement;
using geometry::UnitVector;

/// Normalized isotropic Gaussian in R^{p+1}.
[[nodiscard]] std::vector<UnitVector> sample_uniform_sphere(int p, std::size_t n, SeededStream& stream);

enum class VmfMethod {
    Auto,        ///< inverse CDF on S_2, rejection elsewhere
    InverseCdf,  ///< exact inversion of the cos θ law; S_2 only
    Rejection,   ///< Wood's rejection scheme on cos θ, any p
};

struct SamplerStats {
    std::size_t accepted = 0;
    std::size_t proposals = 0;
    [[nodiscard]] double acceptance_rate() const {
        return proposals == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
    }
};

[[nodiscard]] std::vector<UnitVector> sample_vmf(const dist::VmfParams& params, std::size_t n, SeededStream& stream,
                                                 VmfMethod method = VmfMethod::Auto, SamplerStats* stats = nullptr);

/// Exponential map of N(0, σ² I) tangent draws; needs a normal WrappedSpec.
[[nodiscard]] std::vector<UnitVector> sample_wrapped_sphere(const wrapped::WrappedSpec& spec, std::size_t n,
                                                            SeededStream& stream);

/// Haar-uniform rotations from uniform quaternions on S³.
[[nodiscard]] std::vector<RotationElement> sample_haar_so3(std::size_t n, SeededStream& stream);
[[nodiscard]] RotationElement sample_haar_so3_one(SeededStream& stream);

}  // namespace dirstat::sampling
