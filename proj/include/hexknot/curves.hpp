#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hexknot/geometry.hpp"

namespace hexknot::curves {

enum class Ambient { R3, S3 };

/// One Fourier term of a coordinate function:
///   cos_coeff * cos(2*pi*freq*t) + sin_coeff * sin(2*pi*freq*t).
/// freq is in integer cycles per period so every curve is exactly 1-periodic.
struct FourierTerm {
  int freq = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// A Z-periodic parametric knot given by a finite Fourier sum per coordinate,
/// in R^3 or on the unit sphere S^3 in R^4. Immutable once constructed; all
/// evaluation is pure and safe to share across threads.
class PeriodicCurve {
 public:
  PeriodicCurve(Ambient ambient, std::array<std::vector<FourierTerm>, 4> coords,
                std::string label);

  Ambient ambient() const { return ambient_; }
  int dim() const { return ambient_ == Ambient::R3 ? 3 : 4; }
  const std::string& label() const { return label_; }
  const std::array<std::vector<FourierTerm>, 4>& coords() const { return coords_; }

  /// Evaluate at t. The 4th component is 0 for R3 curves.
  Vec4 eval4(double t) const;
  /// Term-wise analytic derivative at t.
  Vec4 derivative4(double t) const;

  Vec3 eval3(double t) const;  // requires dim()==3

  /// Minimum of |derivative| over a uniform grid.
  double min_speed(int grid = 10000) const;
  /// Maximum of ||eval|-1| over a uniform grid (S3 membership check).
  double max_sphere_defect(int grid = 10000) const;

  /// Throws CurveValidationError when an invariant fails: S3 membership
  /// within 1e-12 on a 1e4 grid, or vanishing derivative.
  void validate() const;

 private:
  Ambient ambient_;
  std::array<std::vector<FourierTerm>, 4> coords_;
  std::string label_;
};

/// A point on S^3 used as the pole of a stereographic projection. Must stay
/// clear of the curve it is used with.
struct InversionPoint {
  Vec4 point{0, 0, 0, 1};
};

/// Builds an inversion point, checking |p|=1 and, when a curve is given,
/// min_t |p - curve(t)| > clearance on a dense grid.
InversionPoint make_inversion_point(const Vec4& p,
                                    const PeriodicCurve* curve = nullptr,
                                    double clearance = 1e-3);

/// Deterministic inversion point for an S3 curve: tries the north pole, then
/// seeded random unit vectors, until the clearance holds.
InversionPoint default_inversion_point(const PeriodicCurve& curve,
                                       std::uint64_t seed = 0,
                                       double clearance = 1e-3);

/// Stereographic projection of x in S^3 from pole I onto the hyperplane
/// through the origin orthogonal to I, expressed in a deterministic
/// orthonormal basis of that hyperplane.
/// Throws PointAtInfinityError when |x - I| < clearance.
Vec3 stereographic_project(const Vec4& x, const InversionPoint& I,
                           double clearance = 1e-3);

/// Inverse of stereographic_project; always lands on S^3 \ {I}.
Vec4 stereographic_unproject(const Vec3& y, const InversionPoint& I);

/// Catalog curve by name. Names: paper-trefoil (S3), torus-2-3, torus-2-5,
/// torus-2-7, figure-eight, round-unknot. Throws UnknownCurveError.
PeriodicCurve builtin_curve(const std::string& name);
std::vector<std::string> builtin_curve_names();

/// Vertices eval(k/n), k = 0..n-1, stereographically projected first for S3
/// curves (I required then). Throws on n < 3 and propagates
/// PointAtInfinityError.
std::vector<Vec3> polygonalize(const PeriodicCurve& curve, int n,
                               const std::optional<InversionPoint>& I = std::nullopt);

}  // namespace hexknot::curves
