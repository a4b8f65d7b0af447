#include "hexknot/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hexknot {

PlaneFit fit_plane(std::span<const Vec3> points) {
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  Vec3 n = es.eigenvectors().col(0);  // smallest eigenvalue

  double offset = n.dot(centroid);
  if (offset < 0 || (std::abs(offset) < 1e-14 &&
                     (n.x() < 0 || (n.x() == 0 && (n.y() < 0 || (n.y() == 0 && n.z() < 0)))))) {
    n = -n;
    offset = -offset;
  }
  PlaneFit fit;
  fit.plane = Plane{n, offset};
  for (const auto& p : points)
    fit.max_abs_distance = std::max(fit.max_abs_distance, std::abs(fit.plane.signed_distance(p)));
  return fit;
}

std::optional<Circle2> circumcircle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double ax = a.x(), ay = a.y(), bx = b.x(), by = b.y(), cx = c.x(), cy = c.y();
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double scale = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm(), 1e-300});
  if (std::abs(d) < 1e-12 * scale * scale) return std::nullopt;
  const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  Circle2 circle;
  circle.center.x() = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
  circle.center.y() = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
  circle.radius = (a - circle.center).norm();
  return circle;
}

std::optional<CircleFit> fit_circle(std::span<const Vec2> points) {
  // Kasa fit: minimize |x|^2 - 2 c.x - r0 over (c, r0).
  const int n = static_cast<int>(points.size());
  if (n < 3) return std::nullopt;
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 2.0 * points[i].x();
    A(i, 1) = 2.0 * points[i].y();
    A(i, 2) = 1.0;
    rhs(i) = points[i].squaredNorm();
  }
  Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  const double r2 = sol(2) + sol(0) * sol(0) + sol(1) * sol(1);
  if (!(r2 > 0) || !std::isfinite(r2)) return std::nullopt;
  CircleFit fit;
  fit.circle.center = Vec2(sol(0), sol(1));
  fit.circle.radius = std::sqrt(r2);
  for (const auto& p : points)
    fit.max_abs_residual = std::max(
        fit.max_abs_residual, std::abs((p - fit.circle.center).norm() - fit.circle.radius));
  return fit;
}

std::optional<SphereFit> fit_sphere(std::span<const Vec3> points) {
  const int n = static_cast<int>(points.size());
  if (n < 4) return std::nullopt;
  Eigen::MatrixXd A(n, 4);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 2.0 * points[i].x();
    A(i, 1) = 2.0 * points[i].y();
    A(i, 2) = 2.0 * points[i].z();
    A(i, 3) = 1.0;
    rhs(i) = points[i].squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(3) < 1e-9 * svd.singularValues()(0)) return std::nullopt;
  Eigen::Vector4d sol = svd.solve(rhs);
  const double r2 = sol(3) + sol.head<3>().squaredNorm();
  if (!(r2 > 0) || !std::isfinite(r2)) return std::nullopt;
  SphereFit fit;
  fit.center = sol.head<3>();
  fit.radius = std::sqrt(r2);
  for (const auto& p : points)
    fit.max_abs_residual =
        std::max(fit.max_abs_residual, std::abs((p - fit.center).norm() - fit.radius));
  return fit;
}

std::optional<SegmentHit> segment_intersect_2d(const Vec2& a0, const Vec2& a1,
                                               const Vec2& b0, const Vec2& b1,
                                               double parallel_eps) {
  const Vec2 da = a1 - a0;
  const Vec2 db = b1 - b0;
  const double denom = da.x() * db.y() - da.y() * db.x();
  const double scale = da.norm() * db.norm();
  if (std::abs(denom) <= parallel_eps * std::max(scale, 1e-300)) return std::nullopt;
  const Vec2 w = b0 - a0;
  const double s = (w.x() * db.y() - w.y() * db.x()) / denom;
  const double t = (w.x() * da.y() - w.y() * da.x()) / denom;
  if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) return std::nullopt;
  SegmentHit hit;
  hit.s = s;
  hit.t = t;
  hit.point = a0 + s * da;
  return hit;
}

double point_line_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len = d.norm();
  if (len < 1e-300) return (p - a).norm();
  return d.cross(p - a).norm() / len;
}

double segment_distance_3d(const Vec3& a0, const Vec3& a1, const Vec3& b0,
                           const Vec3& b1) {
  const Vec3 u = a1 - a0, v = b1 - b0, w = a0 - b0;
  const double A = u.dot(u), B = u.dot(v), C = v.dot(v), D = u.dot(w), E = v.dot(w);
  const double den = A * C - B * B;
  double s, t;
  if (den < 1e-14 * std::max(A * C, 1e-300)) {
    s = 0.0;
    t = (C > 1e-300) ? E / C : 0.0;
  } else {
    s = (B * E - C * D) / den;
    t = (A * E - B * D) / den;
  }
  s = std::clamp(s, 0.0, 1.0);
  t = std::clamp(t, 0.0, 1.0);
  // clamped values may not be jointly optimal; refine each against the other
  auto closest_param = [](double num, double den2) {
    return den2 > 1e-300 ? std::clamp(num / den2, 0.0, 1.0) : 0.0;
  };
  t = closest_param(v.dot(a0 + s * u - b0), C);
  s = closest_param(u.dot(b0 + t * v - a0), A);
  t = closest_param(v.dot(a0 + s * u - b0), C);
  return (a0 + s * u - (b0 + t * v)).norm();
}

Vec3 rotate_about_line(const Vec3& x, const Vec3& line_point, const Vec3& line_dir,
                       double angle) {
  const Vec3 k = line_dir.normalized();
  const Vec3 p = x - line_point;
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec3 rotated = p * c + k.cross(p) * s + k * (k.dot(p)) * (1.0 - c);
  return line_point + rotated;
}

void orthonormal_basis(const Vec3& w, Vec3& u, Vec3& v) {
  const Vec3 n = w.normalized();
  const Vec3 pick = std::abs(n.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  u = (pick - pick.dot(n) * n).normalized();
  v = n.cross(u);
}

void orthonormal_basis_r4(const Vec4& n, Vec4& e1, Vec4& e2, Vec4& e3) {
  // deterministic Gram-Schmidt against the two axes least aligned with n
  const Vec4 unit = n.normalized();
  std::array<Vec4, 4> axes = {Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0),
                              Vec4(0, 0, 0, 1)};
  std::array<Vec4, 3> out;
  int count = 0;
  for (int i = 0; i < 4 && count < 3; ++i) {
    Vec4 cand = axes[static_cast<size_t>(i)];
    cand -= cand.dot(unit) * unit;
    for (int j = 0; j < count; ++j) cand -= cand.dot(out[static_cast<size_t>(j)]) * out[static_cast<size_t>(j)];
    const double len = cand.norm();
    if (len > 1e-6) out[static_cast<size_t>(count++)] = cand / len;
  }
  e1 = out[0];
  e2 = out[1];
  e3 = out[2];
}

}  // namespace hexknot
