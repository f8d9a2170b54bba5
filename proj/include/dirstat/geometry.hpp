#pragma once

// Points of S_p, RP_p and SO(3), the polar chart on S_2, the exponential map
// at the north pole, and the Lambert azimuthal equal-area projection.

#include <initializer_list>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dirstat::geometry {

inline constexpr double kUnitTolerance = 1e-12;

/// A point of S_p embedded in R^q, q = p + 1. Always normalized on construction.
class UnitVector {
public:
    /// Normalizes `v`; throws DomainError for zero or non-finite input.
    explicit UnitVector(Eigen::VectorXd v);
    UnitVector(std::initializer_list<double> values);

    [[nodiscard]] const Eigen::VectorXd& coords() const noexcept { return coords_; }
    [[nodiscard]] int ambient_dim() const noexcept { return static_cast<int>(coords_.size()); }
    [[nodiscard]] int sphere_dim() const noexcept { return ambient_dim() - 1; }
    [[nodiscard]] double operator[](int i) const { return coords_(i); }
    [[nodiscard]] double dot(const UnitVector& other) const;
    [[nodiscard]] UnitVector operator-() const;

private:
    struct Trusted {};
    UnitVector(Eigen::VectorXd v, Trusted) : coords_(std::move(v)) {}
    Eigen::VectorXd coords_;
};

/// (0, ..., 0, 1) in R^q.
[[nodiscard]] UnitVector north_pole(int ambient_dim);

/// Colatitude θ ∈ [0, π] and longitude φ ∈ [0, 2π); φ = 0 at the poles.
struct PolarAngles {
    double theta = 0.0;
    double phi = 0.0;
};

[[nodiscard]] PolarAngles to_polar(const UnitVector& v);
[[nodiscard]] UnitVector from_polar(const PolarAngles& a);

struct PlanarPoint {
    double u = 0.0;
    double v = 0.0;
};

/// (2 sin(θ/2) cos φ, 2 sin(θ/2) sin φ); radius in [0, 2].
[[nodiscard]] PlanarPoint lambert_project(const PolarAngles& a);

/// An unsigned direction ±x, stored as the representative in the closed upper
/// hemisphere (last coordinate ≥ 0). On the equator the first nonzero
/// coordinate is made positive.
class AxialDirection {
public:
    explicit AxialDirection(const UnitVector& v);
    [[nodiscard]] const UnitVector& representative() const noexcept { return rep_; }

private:
    UnitVector rep_;
};

/// A tangent vector in embedded form: `vec` lies in the tangent space at `base`.
class TangentVector {
public:
    /// Throws DomainError unless `vec` is orthogonal to `base` within 1e-12·max(1, ‖vec‖).
    TangentVector(UnitVector base, Eigen::VectorXd vec);
    [[nodiscard]] const UnitVector& base() const noexcept { return base_; }
    [[nodiscard]] const Eigen::VectorXd& vec() const noexcept { return vec_; }

private:
    UnitVector base_;
    Eigen::VectorXd vec_;
};

/// Exponential map at the north pole in intrinsic chart coordinates x ∈ R^{q-1}:
/// returns (sin‖x‖ · x/‖x‖, cos‖x‖).
[[nodiscard]] UnitVector exp_map_sphere(const Eigen::VectorXd& chart);

/// Exponential map at an arbitrary base point, embedded form.
[[nodiscard]] UnitVector exp_map_sphere(const TangentVector& t);

/// Inverse of the north-pole exponential map on ‖x‖ < π. Throws at the south pole.
[[nodiscard]] Eigen::VectorXd log_map_sphere(const UnitVector& y);

/// Great-circle distance in [0, π]; throws DimensionMismatch.
[[nodiscard]] double angle_between(const UnitVector& a, const UnitVector& b);

/// A proper rotation (det +1) of R^q that maps the north pole onto `target`.
[[nodiscard]] Eigen::MatrixXd rotation_from_north_pole(const UnitVector& target);

[[nodiscard]] UnitVector rotate(const Eigen::MatrixXd& rotation, const UnitVector& v);

/// Sign-canonical quaternion (w, x, y, z): w ≥ 0, ties broken on the next
/// nonzero component.
[[nodiscard]] Eigen::Vector4d canonical_quaternion(const Eigen::Vector4d& q);

/// An element of SO(3) held both as a matrix and as its canonical unit quaternion.
class RotationElement {
public:
    /// Throws DomainError unless MᵀM = I and det M = 1 within 1e-10.
    static RotationElement from_matrix(const Eigen::Matrix3d& m);
    /// Throws DomainError for a non-unit quaternion (w, x, y, z).
    static RotationElement from_quaternion(const Eigen::Vector4d& q);
    static RotationElement identity();

    [[nodiscard]] const Eigen::Matrix3d& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const Eigen::Vector4d& quat() const noexcept { return quat_; }
    [[nodiscard]] RotationElement operator*(const RotationElement& rhs) const;
    [[nodiscard]] double trace() const { return matrix_.trace(); }

private:
    RotationElement(const Eigen::Matrix3d& m, const Eigen::Vector4d& q) : matrix_(m), quat_(q) {}
    Eigen::Matrix3d matrix_;
    Eigen::Vector4d quat_;
};

[[nodiscard]] RotationElement quat_to_rotation(const Eigen::Vector4d& q);
[[nodiscard]] Eigen::Vector4d rotation_to_quat(const RotationElement& r);

/// The S³ point of a quaternion with the scalar part last, so that the
/// identity rotation sits at the north pole (0, 0, 0, 1).
[[nodiscard]] UnitVector quaternion_to_sphere_point(const Eigen::Vector4d& q);

}  // namespace dirstat::geometry
