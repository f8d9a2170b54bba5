#include "dirstat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirstat/errors.hpp"

namespace dirstat::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRotationTolerance = 1e-10;

}  // namespace

UnitVector::UnitVector(Eigen::VectorXd v) : coords_(std::move(v)) {
    if (coords_.size() < 2) throw DomainError("unit vectors need at least two coordinates");
    if (!coords_.allFinite()) throw DomainError("unit vector has non-finite coordinates");
    const double norm = coords_.norm();
    if (!(norm > 0.0)) throw DomainError("cannot normalize the zero vector");
    coords_ /= norm;
}

UnitVector::UnitVector(std::initializer_list<double> values)
    : UnitVector(Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Eigen::Index>(values.size()))) {}

double UnitVector::dot(const UnitVector& other) const {
    if (other.ambient_dim() != ambient_dim()) throw DimensionMismatch("unit vectors differ in dimension");
    return coords_.dot(other.coords_);
}

UnitVector UnitVector::operator-() const { return UnitVector(-coords_, Trusted{}); }

UnitVector north_pole(int ambient_dim) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ambient_dim);
    e(ambient_dim - 1) = 1.0;
    return UnitVector(std::move(e));
}

PolarAngles to_polar(const UnitVector& v) {
    if (v.ambient_dim() != 3) throw DimensionMismatch("polar angles are defined on S_2 only");
    const double x = v[0];
    const double y = v[1];
    const double rho = std::hypot(x, y);
    PolarAngles a;
    a.theta = std::atan2(rho, v[2]);
    if (rho == 0.0) return a;
    a.phi = std::atan2(y, x);
    if (a.phi < 0.0) a.phi += kTwoPi;
    if (a.phi >= kTwoPi) a.phi = 0.0;
    return a;
}

UnitVector from_polar(const PolarAngles& a) {
    const double s = std::sin(a.theta);
    return UnitVector{s * std::cos(a.phi), s * std::sin(a.phi), std::cos(a.theta)};
}

PlanarPoint lambert_project(const PolarAngles& a) {
    if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi)) throw DomainError("colatitude must lie in [0, pi]");
    const double r = 2.0 * std::sin(0.5 * a.theta);
    return {r * std::cos(a.phi), r * std::sin(a.phi)};
}

namespace {

UnitVector upper_hemisphere(const UnitVector& v) {
    const int q = v.ambient_dim();
    const double last = v[q - 1];
    if (last > 0.0) return v;
    if (last < 0.0) return -v;
    for (int i = 0; i < q - 1; ++i) {
        if (v[i] > 0.0) return v;
        if (v[i] < 0.0) return -v;
    }
    return v;
}

}  // namespace

AxialDirection::AxialDirection(const UnitVector& v) : rep_(upper_hemisphere(v)) {}

TangentVector::TangentVector(UnitVector base, Eigen::VectorXd vec) : base_(std::move(base)), vec_(std::move(vec)) {
    if (vec_.size() != base_.ambient_dim()) throw DimensionMismatch("tangent vector dimension differs from base");
    const double scale = std::max(1.0, vec_.norm());
    if (std::abs(vec_.dot(base_.coords())) > kUnitTolerance * scale) {
        throw DomainError("tangent vector is not orthogonal to its base point");
    }
}

UnitVector exp_map_sphere(const Eigen::VectorXd& chart) {
    const Eigen::Index m = chart.size();
    if (m < 1) throw DomainError("tangent chart needs at least one coordinate");
    const double r = chart.norm();
    Eigen::VectorXd y(m + 1);
    if (r == 0.0) {
        y.setZero();
        y(m) = 1.0;
        return UnitVector(std::move(y));
    }
    y.head(m) = (std::sin(r) / r) * chart;
    y(m) = std::cos(r);
    return UnitVector(std::move(y));
}

UnitVector exp_map_sphere(const TangentVector& t) {
    const double r = t.vec().norm();
    if (r == 0.0) return t.base();
    return UnitVector(std::cos(r) * t.base().coords() + (std::sin(r) / r) * t.vec());
}

Eigen::VectorXd log_map_sphere(const UnitVector& y) {
    const int m = y.ambient_dim() - 1;
    const Eigen::VectorXd head = y.coords().head(m);
    const double s = head.norm();
    if (s == 0.0) {
        if (y[m] > 0.0) return Eigen::VectorXd::Zero(m);
        throw DomainError("log map is undefined at the antipode of the base point");
    }
    const double theta = std::atan2(s, y[m]);
    return (theta / s) * head;
}

double angle_between(const UnitVector& a, const UnitVector& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("angle between vectors of different dimension");
    // acos(a·b) loses half the digits near 0 and π.
    return 2.0 * std::atan2((a.coords() - b.coords()).norm(), (a.coords() + b.coords()).norm());
}

Eigen::MatrixXd rotation_from_north_pole(const UnitVector& target) {
    const int q = target.ambient_dim();
    Eigen::VectorXd u = -target.coords();
    u(q - 1) += 1.0;
    const double n2 = u.squaredNorm();
    if (n2 == 0.0) return Eigen::MatrixXd::Identity(q, q);
    // Householder reflection swapping e_q and target, composed with a flip of
    // the first axis (which fixes e_q) to restore det = +1.
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(q, q) - (2.0 / n2) * u * u.transpose();
    h.col(0) *= -1.0;
    return h;
}

UnitVector rotate(const Eigen::MatrixXd& rotation, const UnitVector& v) {
    if (rotation.cols() != v.ambient_dim()) throw DimensionMismatch("rotation and vector dimensions differ");
    return UnitVector(rotation * v.coords());
}

Eigen::Vector4d canonical_quaternion(const Eigen::Vector4d& q) {
    for (int i = 0; i < 4; ++i) {
        if (q(i) > 0.0) return q;
        if (q(i) < 0.0) return -q;
    }
    return q;
}

RotationElement RotationElement::from_matrix(const Eigen::Matrix3d& m) {
    if (!m.allFinite()) throw DomainError("rotation matrix has non-finite entries");
    if ((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > kRotationTolerance) {
        throw DomainError("matrix is not orthogonal");
    }
    if (std::abs(m.determinant() - 1.0) > kRotationTolerance) throw DomainError("matrix determinant is not +1");
    const Eigen::Quaterniond eq(m);
    Eigen::Vector4d q(eq.w(), eq.x(), eq.y(), eq.z());
    q.normalize();
    return {m, canonical_quaternion(q)};
}

RotationElement RotationElement::from_quaternion(const Eigen::Vector4d& q) {
    if (!q.allFinite() || std::abs(q.norm() - 1.0) > kRotationTolerance) {
        throw DomainError("quaternion must have unit norm");
    }
    const Eigen::Vector4d unit = q.normalized();
    const Eigen::Quaterniond eq(unit(0), unit(1), unit(2), unit(3));
    return {eq.toRotationMatrix(), canonical_quaternion(unit)};
}

RotationElement RotationElement::identity() {
    return {Eigen::Matrix3d::Identity(), Eigen::Vector4d(1.0, 0.0, 0.0, 0.0)};
}

RotationElement RotationElement::operator*(const RotationElement& rhs) const {
    const Eigen::Quaterniond a(quat_(0), quat_(1), quat_(2), quat_(3));
    const Eigen::Quaterniond b(rhs.quat_(0), rhs.quat_(1), rhs.quat_(2), rhs.quat_(3));
    const Eigen::Quaterniond c = (a * b).normalized();
    return {matrix_ * rhs.matrix_, canonical_quaternion(Eigen::Vector4d(c.w(), c.x(), c.y(), c.z()))};
}

RotationElement quat_to_rotation(const Eigen::Vector4d& q) { return RotationElement::from_quaternion(q); }

Eigen::Vector4d rotation_to_quat(const RotationElement& r) { return r.quat(); }

UnitVector quaternion_to_sphere_point(const Eigen::Vector4d& q) {
    return UnitVector(Eigen::VectorXd{{q(1), q(2), q(3), q(0)}});
}

}  // namespace dirstat::geometry
