#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hexknot/curves.hpp"
#include "hexknot/errors.hpp"
#include "hexknot/rng.hpp"

using namespace hexknot;
using namespace hexknot::curves;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

// independent high-precision evaluator for the paper trefoil (long double)
Vec4 paper_trefoil_reference(double t) {
  const long double tau = 2.0L * 3.14159265358979323846264338327950288L * t;
  const long double r = 0.707106781186547524400844362104849L;
  return Vec4(static_cast<double>(r * std::cos(2 * tau)),
              static_cast<double>(r * std::sin(2 * tau)),
              static_cast<double>(r * std::cos(3 * tau)),
              static_cast<double>(r * std::sin(3 * tau)));
}
}  // namespace

TEST_CASE("catalog curves validate") {
  for (const auto& name : builtin_curve_names()) {
    const PeriodicCurve c = builtin_curve(name);
    CHECK_NOTHROW(c.validate());
    CHECK(c.min_speed(2000) > 0);
  }
  CHECK_THROWS_AS(builtin_curve("no-such-knot"), UnknownCurveError);
}

TEST_CASE("paper trefoil evaluation") {
  const PeriodicCurve c = builtin_curve("paper-trefoil");
  const Vec4 at0 = c.eval4(0.0);
  CHECK(at0(0) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(at0(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(at0(2) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(at0(3) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK((c.eval4(1.0) - c.eval4(0.0)).norm() < 1e-12);

  const Vec4 half = c.eval4(0.5);
  CHECK(half(0) == doctest::Approx(kInvSqrt2).epsilon(1e-12));
  CHECK(std::abs(half(1)) < 1e-12);
  CHECK(half(2) == doctest::Approx(-kInvSqrt2).epsilon(1e-12));
  CHECK(std::abs(half(3)) < 1e-12);

  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const double t = rng.uniform();
    CHECK((c.eval4(t) - paper_trefoil_reference(t)).norm() < 1e-13);
  }
}

TEST_CASE("periodicity and S3 membership") {
  Rng rng(11);
  for (const auto& name : builtin_curve_names()) {
    const PeriodicCurve c = builtin_curve(name);
    for (int k = 0; k < 40; ++k) {
      const double t = rng.uniform(-3, 3);
      CHECK((c.eval4(t) - c.eval4(t + 1.0)).norm() < 1e-12);
    }
    if (c.ambient() == Ambient::S3) CHECK(c.max_sphere_defect(2000) < 1e-12);
  }
}

TEST_CASE("derivative: constant curve and paper value") {
  std::array<std::vector<FourierTerm>, 4> coords;
  coords[0] = {{0, 2.5, 0.0}};
  coords[1] = {{0, -1.0, 0.0}};
  coords[2] = {{0, 0.25, 0.0}};
  const PeriodicCurve constant(Ambient::R3, coords, "const");
  CHECK(constant.derivative4(0.37).norm() == 0.0);

  // gamma'(0) = (1/sqrt2)*(0, 4pi, 0, 6pi) by term-wise differentiation
  const PeriodicCurve c = builtin_curve("paper-trefoil");
  const Vec4 d0 = c.derivative4(0.0);
  const double pi = 3.14159265358979323846;
  CHECK(std::abs(d0(0)) < 1e-12);
  CHECK(d0(1) == doctest::Approx(kInvSqrt2 * 4 * pi).epsilon(1e-13));
  CHECK(std::abs(d0(2)) < 1e-12);
  CHECK(d0(3) == doctest::Approx(kInvSqrt2 * 6 * pi).epsilon(1e-13));
}

TEST_CASE("derivative agrees with central differences") {
  Rng rng(23);
  const double h = 1e-6;
  for (const auto& name : builtin_curve_names()) {
    const PeriodicCurve c = builtin_curve(name);
    for (int k = 0; k < 100; ++k) {
      const double t = rng.uniform();
      const Vec4 fd = (c.eval4(t + h) - c.eval4(t - h)) / (2 * h);
      const Vec4 an = c.derivative4(t);
      const double denom = std::max(1.0, an.norm());
      CHECK((fd - an).norm() / denom < 1e-5);
    }
  }
}

TEST_CASE("stereographic projection basics") {
  const PeriodicCurve c = builtin_curve("paper-trefoil");
  const InversionPoint I = default_inversion_point(c);

  // antipode maps to the origin
  CHECK(stereographic_project(-I.point, I).norm() < 1e-12);

  // round trip on random sphere points
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const Vec4 x = rng.unit_vec4();
    if ((x - I.point).norm() < 1e-3) continue;
    const Vec3 y = stereographic_project(x, I);
    CHECK((stereographic_unproject(y, I) - x).norm() < 1e-10);
  }

  // undefined at the pole
  CHECK_THROWS_AS(stereographic_project(I.point, I), PointAtInfinityError);
}

TEST_CASE("concurrent chords project to concurrent lines") {
  // Lemma-style transport: lines through p chordal to S^3 project to
  // concurrent lines in R^3; the meet is the image of the second
  // intersection J of line(p, I) with S^3 (computed independently here).
  Rng rng(31);
  const InversionPoint I{Vec4(0, 0, 0, 1)};
  int tested = 0;
  while (tested < 100) {
    Vec4 p = rng.unit_vec4() * rng.uniform(0.2, 0.8);  // inside the ball
    if ((p - I.point).norm() < 0.05) continue;

    // chords through p
    std::array<std::array<Vec4, 2>, 3> chords;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const Vec4 dir = rng.unit_vec4();
      // |p + s dir| = 1
      const double b = p.dot(dir), c0 = p.squaredNorm() - 1.0;
      const double disc = b * b - c0;
      if (disc <= 1e-6) {
        ok = false;
        break;
      }
      const double s1 = -b + std::sqrt(disc), s2 = -b - std::sqrt(disc);
      chords[static_cast<size_t>(i)] = {p + s1 * dir, p + s2 * dir};
      for (const auto& x : chords[static_cast<size_t>(i)])
        if ((x - I.point).norm() < 1e-2) ok = false;
    }
    if (!ok) continue;

    // J: second intersection of line(p, I) with the sphere
    const Vec4 u = (p - I.point).normalized();
    const double b = I.point.dot(u);
    const double s = -2 * b;  // from |I + s u| = 1, s=0 is I itself
    if (std::abs(s) < 1e-6) continue;
    const Vec4 J = I.point + s * u;
    const Vec3 expected_meet = stereographic_project(J, I);

    std::array<std::array<Vec3, 2>, 3> lines;
    for (int i = 0; i < 3; ++i)
      for (int e = 0; e < 2; ++e)
        lines[static_cast<size_t>(i)][static_cast<size_t>(e)] =
            stereographic_project(chords[static_cast<size_t>(i)][static_cast<size_t>(e)], I);

    for (int i = 0; i < 3; ++i) {
      const double dist = point_line_distance(expected_meet, lines[static_cast<size_t>(i)][0],
                                              lines[static_cast<size_t>(i)][1]);
      CHECK(dist < 1e-8);
    }
    ++tested;
  }
}

TEST_CASE("polygonalize") {
  const PeriodicCurve circle = builtin_curve("round-unknot");
  const auto hex = polygonalize(circle, 6);
  CHECK(hex.size() == 6);
  for (const auto& v : hex) CHECK(std::abs(v.z()) < 1e-15);

  CHECK_THROWS_AS(polygonalize(circle, 2), std::invalid_argument);
  const PeriodicCurve tref = builtin_curve("paper-trefoil");
  CHECK_THROWS_AS(polygonalize(tref, 12), std::invalid_argument);  // missing I

  const InversionPoint I = default_inversion_point(tref);
  CHECK(polygonalize(tref, 96, I).size() == 96);
}

TEST_CASE("inversion point clearance") {
  const PeriodicCurve tref = builtin_curve("paper-trefoil");
  // a point on the curve violates any positive clearance
  CHECK_THROWS_AS(make_inversion_point(tref.eval4(0.25), &tref), CurveValidationError);
  CHECK_NOTHROW(make_inversion_point(Vec4(0, 0, 0, 1), &tref));
}
