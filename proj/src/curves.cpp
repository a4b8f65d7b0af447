#include "hexknot/curves.hpp"

#include <cmath>
#include <sstream>

#include "hexknot/errors.hpp"
#include "hexknot/rng.hpp"

namespace hexknot::curves {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
}  // namespace

PeriodicCurve::PeriodicCurve(Ambient ambient,
                             std::array<std::vector<FourierTerm>, 4> coords,
                             std::string label)
    : ambient_(ambient), coords_(std::move(coords)), label_(std::move(label)) {
  if (ambient_ == Ambient::R3 && !coords_[3].empty())
    throw CurveValidationError("R3 curve with a 4th coordinate: " + label_);
}

Vec4 PeriodicCurve::eval4(double t) const {
  Vec4 out = Vec4::Zero();
  for (int c = 0; c < 4; ++c) {
    double acc = 0.0;
    for (const auto& term : coords_[static_cast<size_t>(c)]) {
      const double phase = kTwoPi * term.freq * t;
      acc += term.cos_coeff * std::cos(phase) + term.sin_coeff * std::sin(phase);
    }
    out(c) = acc;
  }
  return out;
}

Vec4 PeriodicCurve::derivative4(double t) const {
  Vec4 out = Vec4::Zero();
  for (int c = 0; c < 4; ++c) {
    double acc = 0.0;
    for (const auto& term : coords_[static_cast<size_t>(c)]) {
      const double w = kTwoPi * term.freq;
      const double phase = w * t;
      acc += -term.cos_coeff * w * std::sin(phase) + term.sin_coeff * w * std::cos(phase);
    }
    out(c) = acc;
  }
  return out;
}

Vec3 PeriodicCurve::eval3(double t) const {
  const Vec4 p = eval4(t);
  return Vec3(p(0), p(1), p(2));
}

double PeriodicCurve::min_speed(int grid) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k)
    best = std::min(best, derivative4(static_cast<double>(k) / grid).norm());
  return best;
}

double PeriodicCurve::max_sphere_defect(int grid) const {
  double worst = 0.0;
  for (int k = 0; k < grid; ++k)
    worst = std::max(worst, std::abs(eval4(static_cast<double>(k) / grid).norm() - 1.0));
  return worst;
}

void PeriodicCurve::validate() const {
  if (ambient_ == Ambient::S3) {
    const double defect = max_sphere_defect();
    if (defect > 1e-12)
      throw CurveValidationError(label_ + ": |eval| deviates from 1 by " +
                                 std::to_string(defect));
  }
  const double speed = min_speed();
  if (!(speed > 0))
    throw CurveValidationError(label_ + ": derivative vanishes on the grid");
}

InversionPoint make_inversion_point(const Vec4& p, const PeriodicCurve* curve,
                                    double clearance) {
  if (std::abs(p.norm() - 1.0) > 1e-9)
    throw CurveValidationError("inversion point must lie on S^3");
  InversionPoint I{p.normalized()};
  if (curve) {
    for (int k = 0; k < 4096; ++k) {
      const double d = (curve->eval4(static_cast<double>(k) / 4096) - I.point).norm();
      if (d <= clearance)
        throw CurveValidationError("inversion point within clearance of the curve");
    }
  }
  return I;
}

InversionPoint default_inversion_point(const PeriodicCurve& curve, std::uint64_t seed,
                                       double clearance) {
  // seeded random poles; symmetric choices (e.g. the north pole over the
  // paper trefoil) can degenerate the projected hexagons
  Rng rng(mix_seed(seed, 0x1e5u));
  for (int attempt = 0; attempt < 256; ++attempt) {
    try {
      return make_inversion_point(rng.unit_vec4(), &curve, clearance);
    } catch (const CurveValidationError&) {
    }
  }
  throw CurveValidationError("no inversion point clear of curve " + curve.label());
}

Vec3 stereographic_project(const Vec4& x, const InversionPoint& I, double clearance) {
  if ((x - I.point).norm() < clearance)
    throw PointAtInfinityError("point within clearance of the inversion point");
  Vec4 e1, e2, e3;
  orthonormal_basis_r4(I.point, e1, e2, e3);
  const double denom = 1.0 - x.dot(I.point);
  const Vec4 y = (x - x.dot(I.point) * I.point) / denom;
  return Vec3(y.dot(e1), y.dot(e2), y.dot(e3));
}

Vec4 stereographic_unproject(const Vec3& y, const InversionPoint& I) {
  Vec4 e1, e2, e3;
  orthonormal_basis_r4(I.point, e1, e2, e3);
  const double r2 = y.squaredNorm();
  const Vec4 lifted = y.x() * e1 + y.y() * e2 + y.z() * e3;
  return ((r2 - 1.0) * I.point + 2.0 * lifted) / (r2 + 1.0);
}

namespace {

std::vector<FourierTerm> terms(std::initializer_list<FourierTerm> list) {
  return std::vector<FourierTerm>(list);
}

// (R + cos(2 pi q t)) winding twice around the axis: the (2,q) torus knot.
PeriodicCurve torus_2q(int q, const std::string& label) {
  std::array<std::vector<FourierTerm>, 4> coords;
  coords[0] = terms({{2, 2.0, 0.0}, {q + 2, 0.5, 0.0}, {q - 2, 0.5, 0.0}});
  coords[1] = terms({{2, 0.0, 2.0}, {q + 2, 0.0, 0.5}, {q - 2, 0.0, -0.5}});
  coords[2] = terms({{q, 0.0, 1.0}});
  return PeriodicCurve(Ambient::R3, coords, label);
}

}  // namespace

PeriodicCurve builtin_curve(const std::string& name) {
  if (name == "paper-trefoil") {
    std::array<std::vector<FourierTerm>, 4> coords;
    coords[0] = terms({{2, kInvSqrt2, 0.0}});
    coords[1] = terms({{2, 0.0, kInvSqrt2}});
    coords[2] = terms({{3, kInvSqrt2, 0.0}});
    coords[3] = terms({{3, 0.0, kInvSqrt2}});
    return PeriodicCurve(Ambient::S3, coords, name);
  }
  if (name == "torus-2-3") return torus_2q(3, name);
  if (name == "torus-2-5") return torus_2q(5, name);
  if (name == "torus-2-7") return torus_2q(7, name);
  if (name == "figure-eight") {
    // (2 + cos 4 pi t) e(6 pi t) with z = sin 8 pi t; a2 = -1 (checked in tests)
    std::array<std::vector<FourierTerm>, 4> coords;
    coords[0] = terms({{3, 2.0, 0.0}, {5, 0.5, 0.0}, {1, 0.5, 0.0}});
    coords[1] = terms({{3, 0.0, 2.0}, {5, 0.0, 0.5}, {1, 0.0, 0.5}});
    coords[2] = terms({{4, 0.0, 1.0}});
    return PeriodicCurve(Ambient::R3, coords, name);
  }
  if (name == "round-unknot") {
    std::array<std::vector<FourierTerm>, 4> coords;
    coords[0] = terms({{1, 1.0, 0.0}});
    coords[1] = terms({{1, 0.0, 1.0}});
    return PeriodicCurve(Ambient::R3, coords, name);
  }
  std::ostringstream msg;
  msg << "unknown curve '" << name << "'; catalog:";
  for (const auto& n : builtin_curve_names()) msg << ' ' << n;
  throw UnknownCurveError(msg.str());
}

std::vector<std::string> builtin_curve_names() {
  return {"paper-trefoil", "torus-2-3", "torus-2-5",
          "torus-2-7",     "figure-eight", "round-unknot"};
}

std::vector<Vec3> polygonalize(const PeriodicCurve& curve, int n,
                               const std::optional<InversionPoint>& I) {
  if (n < 3) throw std::invalid_argument("polygonalize: n must be >= 3");
  if (curve.ambient() == Ambient::S3 && !I)
    throw std::invalid_argument("polygonalize: S3 curve needs an inversion point");
  std::vector<Vec3> verts;
  verts.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    if (curve.ambient() == Ambient::S3)
      verts.push_back(stereographic_project(curve.eval4(t), *I));
    else
      verts.push_back(curve.eval3(t));
  }
  return verts;
}

}  // namespace hexknot::curves
