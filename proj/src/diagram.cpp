#include "hexknot/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "hexknot/errors.hpp"
#include "hexknot/rng.hpp"

namespace hexknot::diagram {

ClosedPolygon::ClosedPolygon(std::vector<Vec3> vertices)
    : vertices_(std::move(vertices)) {
  const int n = static_cast<int>(vertices_.size());
  if (n < 3) throw PolygonError("polygon needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    if (edge_vector(i).norm() <= 1e-12)
      throw PolygonError("degenerate edge at vertex " + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Vec3& a0 = vertices_[static_cast<size_t>(i)];
      const Vec3 a1 = a0 + edge_vector(i);
      const Vec3& b0 = vertices_[static_cast<size_t>(j)];
      const Vec3 b1 = b0 + edge_vector(j);
      if (segment_distance_3d(a0, a1, b0, b1) <= 1e-12)
        throw PolygonError("edges " + std::to_string(i) + " and " + std::to_string(j) +
                           " intersect in R^3");
    }
  }
}

double ClosedPolygon::diameter() const {
  double d = 0.0;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d = std::max(d, (vertices_[static_cast<size_t>(i)] - vertices_[static_cast<size_t>(j)]).norm());
  return d;
}

ClosedPolygon ClosedPolygon::mirrored() const {
  std::vector<Vec3> out = vertices_;
  for (auto& v : out) v.x() = -v.x();
  return ClosedPolygon(std::move(out));
}

KnotDiagram project_diagram(const ClosedPolygon& poly, const Vec3& direction,
                            const DiagramTolerances& tol) {
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("projection direction must be unit length");
  const int n = poly.size();

  Vec3 u, v;
  orthonormal_basis(direction, u, v);

  KnotDiagram d;
  d.direction = direction;
  d.projected.resize(static_cast<size_t>(n));
  d.depth.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Vec3& p = poly.vertex(i);
    d.projected[static_cast<size_t>(i)] = Vec2(u.dot(p), v.dot(p));
    d.depth[static_cast<size_t>(i)] = direction.dot(p);
  }

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      scale = std::max(scale, (d.projected[static_cast<size_t>(i)] - d.projected[static_cast<size_t>(j)]).norm());
  if (scale <= 1e-12)
    throw NonGenericDirectionError("projected polygon collapses to a point");

  auto pvert = [&](int i) { return d.projected[static_cast<size_t>(i % n)]; };

  // consecutive projected edges must not fold onto each other
  for (int i = 0; i < n; ++i) {
    const Vec2 e0 = (pvert(i + 1) - pvert(i));
    const Vec2 e1 = (pvert(i + 2) - pvert(i + 1));
    const double cross = e0.x() * e1.y() - e0.y() * e1.x();
    const double denom = e0.norm() * e1.norm();
    if (denom <= 1e-15 * scale * scale ||
        (std::abs(cross) / denom < tol.min_angle_sine && e0.dot(e1) < 0))
      throw NonGenericDirectionError("consecutive edges fold at vertex " +
                                     std::to_string((i + 1) % n) + " (min_angle_sine)");
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Vec2 a0 = pvert(i), a1 = pvert(i + 1);
      const Vec2 b0 = pvert(j), b1 = pvert(j + 1);
      const auto hit = segment_intersect_2d(a0, a1, b0, b1);
      if (!hit) {
        // near-parallel overlapping edges would hide a crossing; reject when
        // the segments pass close while nearly parallel
        const Vec2 da = a1 - a0, db = b1 - b0;
        const double cross = da.x() * db.y() - da.y() * db.x();
        if (std::abs(cross) / (da.norm() * db.norm()) < tol.min_angle_sine) {
          // distance between the two projected segments
          auto seg_dist = [](const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
            auto point_seg = [](const Vec2& p, const Vec2& s0, const Vec2& s1) {
              const Vec2 dseg = s1 - s0;
              const double len2 = dseg.squaredNorm();
              const double t = len2 > 0 ? std::clamp((p - s0).dot(dseg) / len2, 0.0, 1.0) : 0.0;
              return (p - (s0 + t * dseg)).norm();
            };
            return std::min(std::min(point_seg(p0, q0, q1), point_seg(p1, q0, q1)),
                            std::min(point_seg(q0, p0, p1), point_seg(q1, p0, p1)));
          };
          if (seg_dist(a0, a1, b0, b1) < tol.vertex_clearance * scale)
            throw NonGenericDirectionError("edges " + std::to_string(i) + "," +
                                           std::to_string(j) +
                                           " nearly parallel and close (min_angle_sine)");
        }
        continue;
      }

      // genericity: transversal angle
      const Vec2 da = a1 - a0, db = b1 - b0;
      const double cross = da.x() * db.y() - da.y() * db.x();
      if (std::abs(cross) / (da.norm() * db.norm()) < tol.min_angle_sine)
        throw NonGenericDirectionError("crossing angle too shallow (min_angle_sine)");

      // genericity: stay clear of all vertex images
      for (int k = 0; k < n; ++k) {
        if ((hit->point - pvert(k)).norm() < tol.vertex_clearance * scale)
          throw NonGenericDirectionError("crossing within vertex clearance of vertex " +
                                         std::to_string(k) + " (vertex_clearance)");
      }

      // depth separation decides over/under
      const double depth_i = d.depth[static_cast<size_t>(i)] +
                             hit->s * (d.depth[static_cast<size_t>((i + 1) % n)] - d.depth[static_cast<size_t>(i)]);
      const double depth_j = d.depth[static_cast<size_t>(j)] +
                             hit->t * (d.depth[static_cast<size_t>((j + 1) % n)] - d.depth[static_cast<size_t>(j)]);
      if (std::abs(depth_i - depth_j) < tol.min_depth_gap * std::max(scale, 1.0))
        throw NonGenericDirectionError("ambiguous depth at crossing (min_depth_gap)");

      Crossing c;
      const bool i_over = depth_i > depth_j;
      c.over_edge = i_over ? i : j;
      c.under_edge = i_over ? j : i;
      c.over_param = i_over ? hit->s : hit->t;
      c.under_param = i_over ? hit->t : hit->s;
      c.point = hit->point;
      const Vec3 over_dir = poly.edge_vector(c.over_edge);
      const Vec3 under_dir = poly.edge_vector(c.under_edge);
      const double det = over_dir.cross(under_dir).dot(direction);
      c.sign = det > 0 ? +1 : -1;
      d.crossings.push_back(c);
    }
  }

  // no three edges through one projected point
  for (size_t i = 0; i < d.crossings.size(); ++i)
    for (size_t j = i + 1; j < d.crossings.size(); ++j)
      if ((d.crossings[i].point - d.crossings[j].point).norm() <
          tol.vertex_clearance * scale)
        throw NonGenericDirectionError(
            "two crossings coincide: three edges through one point (vertex_clearance)");

  return d;
}

Vec3 random_generic_direction(const ClosedPolygon& poly, std::uint64_t seed,
                              const DiagramTolerances& tol) {
  Rng rng(mix_seed(seed, 0xd12ec7104aULL));
  std::string last;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec3 dir = rng.unit_vec3();
    try {
      project_diagram(poly, dir, tol);
      return dir;
    } catch (const NonGenericDirectionError& e) {
      last = e.what();
    }
  }
  throw GenericityExhaustedError("no generic direction in 64 draws (last: " + last + ")");
}

GaussCode gauss_code(const KnotDiagram& diagram) {
  struct Visit {
    int edge;
    double param;
    int crossing_id;
    bool over;
    int sign;
  };
  std::vector<Visit> visits;
  for (size_t id = 0; id < diagram.crossings.size(); ++id) {
    const Crossing& c = diagram.crossings[id];
    visits.push_back({c.over_edge, c.over_param, static_cast<int>(id), true, c.sign});
    visits.push_back({c.under_edge, c.under_param, static_cast<int>(id), false, c.sign});
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& x, const Visit& y) {
    if (x.edge != y.edge) return x.edge < y.edge;
    return x.param < y.param;
  });
  GaussCode code;
  code.crossing_count = static_cast<int>(diagram.crossings.size());
  for (const auto& v : visits) code.entries.push_back({v.crossing_id, v.over, v.sign});
  return code;
}

bool GaussCode::valid() const {
  if (entries.size() != static_cast<size_t>(2 * crossing_count)) return false;
  std::vector<int> over_seen(static_cast<size_t>(crossing_count), 0),
      under_seen(static_cast<size_t>(crossing_count), 0);
  std::vector<int> sign_of(static_cast<size_t>(crossing_count), 0);
  for (const auto& e : entries) {
    if (e.crossing_id < 0 || e.crossing_id >= crossing_count) return false;
    if (e.sign != 1 && e.sign != -1) return false;
    auto idx = static_cast<size_t>(e.crossing_id);
    (e.over ? over_seen : under_seen)[idx] += 1;
    if (sign_of[idx] == 0)
      sign_of[idx] = e.sign;
    else if (sign_of[idx] != e.sign)
      return false;
  }
  for (int i = 0; i < crossing_count; ++i)
    if (over_seen[static_cast<size_t>(i)] != 1 || under_seen[static_cast<size_t>(i)] != 1) return false;
  return true;
}

std::string GaussCode::str() const {
  std::ostringstream os;
  for (size_t k = 0; k < entries.size(); ++k) {
    if (k) os << ' ';
    os << (entries[k].over ? 'O' : 'U') << (entries[k].crossing_id + 1)
       << (entries[k].sign > 0 ? '+' : '-');
  }
  return os.str();
}

int writhe(const GaussCode& code) {
  int w = 0;
  for (const auto& e : code.entries)
    if (e.over) w += e.sign;
  return w;
}

}  // namespace hexknot::diagram
