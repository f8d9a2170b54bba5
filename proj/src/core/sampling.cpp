#include "dirstat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirstat/errors.hpp"

namespace dirstat::sampling {

namespace {

Eigen::VectorXd gaussian_vector(int dim, SeededStream& stream) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = stream.normal();
    return v;
}

UnitVector uniform_direction(int ambient_dim, SeededStream& stream) {
    for (;;) {
        Eigen::VectorXd v = gaussian_vector(ambient_dim, stream);
        if (v.squaredNorm() > 0.0) return UnitVector(std::move(v));
    }
}

double chi_squared(int dof, SeededStream& stream) {
    double sum = 0.0;
    for (int i = 0; i < dof; ++i) {
        const double z = stream.normal();
        sum += z * z;
    }
    return sum;
}

// w = cos θ for the S_2 case: inverse of F(w) = (e^{κw} - e^{-κ}) / (e^κ - e^{-κ}).
double inverse_cdf_cosine(double kappa, double u) {
    if (kappa == 0.0) return 2.0 * u - 1.0;
    const double w = 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa;
    return std::clamp(w, -1.0, 1.0);
}

// Wood (1994): proposal W from a Beta((q-1)/2, (q-1)/2) transform, accepted
// against the envelope on the cos θ marginal.
double rejection_cosine(double kappa, int p, SeededStream& stream, SamplerStats& stats) {
    const double dim = p;
    const double b = dim / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dim * dim));
    const double x0 = (1.0 - b) / (1.0 + b);
    const double c = kappa * x0 + dim * std::log(1.0 - x0 * x0);
    for (;;) {
        ++stats.proposals;
        const double chi_a = chi_squared(p, stream);
        const double chi_b = chi_squared(p, stream);
        const double z = chi_a / (chi_a + chi_b);
        const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
        const double u = stream.uniform01();
        if (kappa * w + dim * std::log(1.0 - x0 * w) - c >= std::log(u)) {
            ++stats.accepted;
            return w;
        }
    }
}

}  // namespace

std::vector<UnitVector> sample_uniform_sphere(int p, std::size_t n, SeededStream& stream) {
    if (p < 1) throw DomainError("sphere dimension p must be >= 1");
    std::vector<UnitVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(uniform_direction(p + 1, stream));
    return out;
}

std::vector<UnitVector> sample_vmf(const dist::VmfParams& params, std::size_t n, SeededStream& stream,
                                   VmfMethod method, SamplerStats* stats) {
    const int p = params.sphere_dim();
    const int q = p + 1;
    if (method == VmfMethod::Auto) method = p == 2 ? VmfMethod::InverseCdf : VmfMethod::Rejection;
    if (method == VmfMethod::InverseCdf && p != 2) throw DomainError("inverse-CDF vMF sampling is for S_2 only");

    const Eigen::MatrixXd to_mu = geometry::rotation_from_north_pole(params.mu());
    SamplerStats local;
    std::vector<UnitVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w;
        if (method == VmfMethod::InverseCdf) {
            w = inverse_cdf_cosine(params.kappa(), stream.uniform01());
            ++local.proposals;
            ++local.accepted;
        } else {
            w = rejection_cosine(params.kappa(), p, stream, local);
        }
        Eigen::VectorXd tangent(p);
        if (p == 1) {
            tangent(0) = stream.uniform01() < 0.5 ? -1.0 : 1.0;
        } else if (p == 2) {
            const double phi = 2.0 * std::numbers::pi * stream.uniform01();
            tangent << std::cos(phi), std::sin(phi);
        } else {
            tangent = uniform_direction(p, stream).coords();
        }
        Eigen::VectorXd x(q);
        x.head(p) = std::sqrt(std::max(0.0, 1.0 - w * w)) * tangent;
        x(p) = w;
        out.emplace_back(to_mu * x);
    }
    if (stats) *stats = local;
    return out;
}

std::vector<UnitVector> sample_wrapped_sphere(const wrapped::WrappedSpec& spec, std::size_t n, SeededStream& stream) {
    if (!spec.sigma2()) throw DomainError("wrapped sphere sampling needs the normal tangent density");
    const double sigma = std::sqrt(*spec.sigma2());
    const int m = spec.q() - 1;
    std::vector<UnitVector> out;
    out.reserve(n);
    const Eigen::MatrixXd to_base = spec.base() ? geometry::rotation_from_north_pole(*spec.base())
                                               : Eigen::MatrixXd::Identity(spec.q(), spec.q());
    for (std::size_t i = 0; i < n; ++i) {
        const UnitVector y = geometry::exp_map_sphere(Eigen::VectorXd(sigma * gaussian_vector(m, stream)));
        out.push_back(spec.base() ? geometry::rotate(to_base, y) : y);
    }
    return out;
}

RotationElement sample_haar_so3_one(SeededStream& stream) {
    Eigen::Vector4d q;
    do {
        q << stream.normal(), stream.normal(), stream.normal(), stream.normal();
    } while (q.squaredNorm() == 0.0);
    return RotationElement::from_quaternion(q.normalized());
}

std::vector<RotationElement> sample_haar_so3(std::size_t n, SeededStream& stream) {
    std::vector<RotationElement> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_haar_so3_one(stream));
    return out;
}

}  // namespace dirstat::sampling
