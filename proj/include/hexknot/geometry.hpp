#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace hexknot {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// Plane in Hessian normal form: normal . x = offset, |normal| = 1.
struct Plane {
  Vec3 normal{0, 0, 1};
  double offset = 0.0;

  double signed_distance(const Vec3& x) const { return normal.dot(x) - offset; }
  Vec3 project(const Vec3& x) const { return x - signed_distance(x) * normal; }
};

struct PlaneFit {
  Plane plane;
  double max_abs_distance = 0.0;  // worst point-to-plane distance
};

/// Least-squares plane through a point cloud (centroid + smallest covariance
/// eigenvector). The normal sign is fixed deterministically: offset >= 0,
/// ties broken by the first nonzero normal component being positive.
PlaneFit fit_plane(std::span<const Vec3> points);

struct Circle2 {
  Vec2 center{0, 0};
  double radius = 0.0;
};

/// Circumcircle of three points; nullopt when (near-)colinear.
std::optional<Circle2> circumcircle(const Vec2& a, const Vec2& b, const Vec2& c);

struct CircleFit {
  Circle2 circle;
  double max_abs_residual = 0.0;  // worst |dist(center,p) - radius|
};

/// Algebraic (Kasa) least-squares circle fit; nullopt when degenerate.
std::optional<CircleFit> fit_circle(std::span<const Vec2> points);

struct SphereFit {
  Vec3 center{0, 0, 0};
  double radius = 0.0;
  double max_abs_residual = 0.0;
};

/// Algebraic least-squares sphere fit; nullopt when degenerate (coplanar-ish).
std::optional<SphereFit> fit_sphere(std::span<const Vec3> points);

struct SegmentHit {
  double s = 0;  // parameter on segment a, in (0,1)
  double t = 0;  // parameter on segment b, in (0,1)
  Vec2 point{0, 0};
};

/// Proper interior intersection of two 2D segments; nullopt for disjoint,
/// touching-at-endpoint (within eps) or near-parallel pairs.
std::optional<SegmentHit> segment_intersect_2d(const Vec2& a0, const Vec2& a1,
                                               const Vec2& b0, const Vec2& b1,
                                               double parallel_eps = 1e-14);

/// Minimal distance between two 3D segments.
double segment_distance_3d(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                           const Vec3& b1);

/// Distance from point p to the line through a, b.
double point_line_distance(const Vec3& p, const Vec3& a, const Vec3& b);

/// Rotation of x about the axis (point + t*dir, |dir|=1) by angle (Rodrigues).
Vec3 rotate_about_line(const Vec3& x, const Vec3& line_point, const Vec3& line_dir,
                       double angle);

/// Deterministic orthonormal basis (u, v) completing unit w to a
/// right-handed frame (u, v, w).
void orthonormal_basis(const Vec3& w, Vec3& u, Vec3& v);

/// Deterministic orthonormal basis of the hyperplane orthogonal to unit n in R^4.
void orthonormal_basis_r4(const Vec4& n, Vec4& e1, Vec4& e2, Vec4& e3);

}  // namespace hexknot
