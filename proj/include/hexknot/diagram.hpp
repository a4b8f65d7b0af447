#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hexknot/geometry.hpp"

namespace hexknot::diagram {

/// Closed polygon in R^3. Construction checks embeddedness: no two
/// consecutive vertices closer than 1e-12, no two non-adjacent edges closer
/// than 1e-12. Throws PolygonError otherwise.
class ClosedPolygon {
 public:
  explicit ClosedPolygon(std::vector<Vec3> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  const Vec3& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  Vec3 edge_vector(int i) const {
    return vertices_[(static_cast<size_t>(i) + 1) % vertices_.size()] -
           vertices_[static_cast<size_t>(i)];
  }
  double diameter() const;

  /// Mirror image (x negated).
  ClosedPolygon mirrored() const;

 private:
  std::vector<Vec3> vertices_;
};

struct Crossing {
  int over_edge = 0;
  int under_edge = 0;
  double over_param = 0;   // in (0,1) along the over edge
  double under_param = 0;  // in (0,1) along the under edge
  int sign = 0;            // sign(det[over_dir, under_dir, view]), view toward the eye
  Vec2 point{0, 0};        // in projected coordinates
};

struct DiagramTolerances {
  double vertex_clearance = 1e-9;  // min distance crossing<->vertex image, relative to diagram scale
  double min_angle_sine = 1e-6;    // |sin| of the projected crossing angle
  double min_depth_gap = 1e-12;    // depth separation at a crossing, relative to scale
};

/// Generic planar projection of a closed polygon: projected vertices plus the
/// signed over/under crossing list. Built by project_diagram.
struct KnotDiagram {
  std::vector<Vec2> projected;  // vertex images, traversal order
  std::vector<double> depth;    // depth of each vertex along the view
  Vec3 direction{0, 0, 1};      // view direction (toward the eye)
  std::vector<Crossing> crossings;

  int size() const { return static_cast<int>(projected.size()); }
};

/// Projects along `direction` (unit). All crossings are found by exact 2D
/// segment intersection on the projected edges; over/under is decided by
/// depth along the view. Near-degenerate inputs are rejected with
/// NonGenericDirectionError (never repaired); the message names the failed
/// tolerance.
KnotDiagram project_diagram(const ClosedPolygon& poly, const Vec3& direction,
                            const DiagramTolerances& tol = {});

/// Seeded search for a direction accepted by project_diagram; retries up to
/// 64 draws, then throws GenericityExhaustedError.
Vec3 random_generic_direction(const ClosedPolygon& poly, std::uint64_t seed,
                              const DiagramTolerances& tol = {});

struct GaussEntry {
  int crossing_id = 0;
  bool over = false;
  int sign = 0;
};

/// Traversal sequence of crossing visits. Each crossing id appears exactly
/// twice, once over and once under, with a consistent sign.
struct GaussCode {
  std::vector<GaussEntry> entries;
  int crossing_count = 0;

  bool valid() const;
  std::string str() const;  // e.g. "O1+ U2- ..."
};

GaussCode gauss_code(const KnotDiagram& diagram);

/// Sum of crossing signs, each crossing counted once.
int writhe(const GaussCode& code);

}  // namespace hexknot::diagram
