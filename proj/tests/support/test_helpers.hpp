#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hexknot/config_geometry.hpp"
#include "hexknot/diagram.hpp"
#include "hexknot/rng.hpp"

namespace hexknot::testing {

/// Random embedded polygon with vertices uniform in [-1,1]^3 (retries until
/// the embedding check passes).
diagram::ClosedPolygon random_polygon(Rng& rng, int n);

inline diagram::ClosedPolygon random_hexagon(Rng& rng) { return random_polygon(rng, 6); }

/// Nested-circle planar configuration in the style of the length diagram:
/// alternating triples on two concentric circles, pairs (i, i+3) in angular
/// clusters. Retries until the core crossing pattern exists. Returns the
/// configuration in a random plane of R^3.
config_geometry::PlanarConfiguration random_type1_configuration(Rng& rng);

/// Six points in the z=0 plane arranged as above, before embedding.
std::array<Vec2, 6> random_type1_coords(Rng& rng);

/// Embed 2D coordinates into a (rotated, offset) plane in R^3.
std::array<Vec3, 6> embed_in_plane(const std::array<Vec2, 6>& coords, Rng& rng);

/// Equally spaced tuple (phase + k/6).
config_geometry::SixTuple spaced_tuple(double phase);

/// Hexagon inscribed on the paper trefoil near the prism configuration.
/// The exact equally-spaced hexagon is singular (opposite edges meet at
/// their midpoints, for every inversion point), so a small fixed twist is
/// applied; the perturbed hexagons are the trefoils the theorems deliver.
diagram::ClosedPolygon paper_prism_hexagon(double twist = 0.02,
                                           std::uint64_t inversion_seed = 0);

}  // namespace hexknot::testing
