#include "support/test_helpers.hpp"

#include <cmath>

#include "hexknot/errors.hpp"

namespace hexknot::testing {

diagram::ClosedPolygon random_polygon(Rng& rng, int n) {
  while (true) {
    std::vector<Vec3> verts;
    for (int i = 0; i < n; ++i)
      verts.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    try {
      return diagram::ClosedPolygon(std::move(verts));
    } catch (const PolygonError&) {
    }
  }
}

std::array<Vec2, 6> random_type1_coords(Rng& rng) {
  const double r_in = rng.uniform(0.6, 0.9);
  const double r_out = rng.uniform(1.1, 1.5);
  const double base = rng.uniform(0, 2 * M_PI);
  std::array<Vec2, 6> q;
  for (int k = 0; k < 3; ++k) {
    const double cluster = base + k * 2 * M_PI / 3;
    const double inner_ang = cluster + rng.uniform(-0.25, 0.25);
    const double outer_ang = cluster + rng.uniform(-0.25, 0.25);
    // odd indices 1,3,5 (0-based 0,2,4) on the inner circle; pairs are
    // (p1,p4), (p2,p5), (p3,p6) with the partner in the same cluster
    const int inner_idx = (2 * k) % 6;          // p1, p3, p5
    const int outer_idx = (inner_idx + 3) % 6;  // p4, p6, p2
    q[static_cast<size_t>(inner_idx)] = Vec2(r_in * std::cos(inner_ang), r_in * std::sin(inner_ang));
    q[static_cast<size_t>(outer_idx)] = Vec2(r_out * std::cos(outer_ang), r_out * std::sin(outer_ang));
  }
  return q;
}

std::array<Vec3, 6> embed_in_plane(const std::array<Vec2, 6>& coords, Rng& rng) {
  const Vec3 normal = rng.unit_vec3();
  Vec3 u, v;
  orthonormal_basis(normal, u, v);
  const Vec3 offset = rng.uniform(-1, 1) * normal;
  std::array<Vec3, 6> out;
  for (int i = 0; i < 6; ++i)
    out[static_cast<size_t>(i)] = offset + coords[static_cast<size_t>(i)].x() * u + coords[static_cast<size_t>(i)].y() * v;
  return out;
}

config_geometry::PlanarConfiguration random_type1_configuration(Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto coords = random_type1_coords(rng);
    const auto pts = embed_in_plane(coords, rng);
    auto cfg = config_geometry::PlanarConfiguration::from_points(pts);
    try {
      (void)config_geometry::segment_data(cfg);
      return cfg;
    } catch (const MissingCrossingError&) {
    }
  }
  throw std::runtime_error("type-1 generator failed to produce the crossing pattern");
}

config_geometry::SixTuple spaced_tuple(double phase) {
  std::array<double, 6> raw{};
  for (int i = 0; i < 6; ++i) raw[static_cast<size_t>(i)] = phase + i / 6.0;
  return config_geometry::SixTuple::canonicalize(raw);
}

diagram::ClosedPolygon paper_prism_hexagon(double twist, std::uint64_t inversion_seed) {
  const auto curve = curves::builtin_curve("paper-trefoil");
  const auto I = curves::default_inversion_point(curve, inversion_seed);
  std::vector<Vec3> verts;
  for (int k = 0; k < 6; ++k) {
    // rotate one triangle of the prism along the curve; the untwisted
    // hexagon is singular
    const double t = k / 6.0 + (k % 2 == 0 ? twist : 0.0);
    verts.push_back(curves::stereographic_project(curve.eval4(t), I));
  }
  return diagram::ClosedPolygon(std::move(verts));
}

}  // namespace hexknot::testing
