#include "hexknot/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "gauss_patterns.hpp"
#include "hexknot/errors.hpp"
#include "hexknot/rng.hpp"

namespace hexknot::invariants {

std::string to_string(KnotClass c) {
  switch (c) {
    case KnotClass::Unknot: return "Unknot";
    case KnotClass::TrefoilLeft: return "TrefoilLeft";
    case KnotClass::TrefoilRight: return "TrefoilRight";
    default: return "Other";
  }
}

KnotClass mirrored(KnotClass c) {
  if (c == KnotClass::TrefoilLeft) return KnotClass::TrefoilRight;
  if (c == KnotClass::TrefoilRight) return KnotClass::TrefoilLeft;
  return c;
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

LaurentPoly kauffman_bracket(const diagram::KnotDiagram& d) {
  const int c = static_cast<int>(d.crossings.size());
  if (c > 20) throw TooManyCrossingsError("state sum limited to 20 crossings, got " +
                                          std::to_string(c));
  if (c == 0) return LaurentPoly::one();

  // Traversal visits and the arcs between them.
  const auto code = gauss_code(d);
  const int m = 2 * c;  // visits; arc k runs from visit k to visit k+1 (mod m)
  std::vector<int> over_pos(static_cast<size_t>(c), -1), under_pos(static_cast<size_t>(c), -1);
  for (int pos = 0; pos < m; ++pos) {
    const auto& e = code.entries[static_cast<size_t>(pos)];
    (e.over ? over_pos : under_pos)[static_cast<size_t>(e.crossing_id)] = pos;
  }

  // Rotating the over-strand counterclockwise onto the under-strand sweeps
  // the A regions; opening them gives, for a positive crossing (det rule),
  // the orientation-preserving pairing (over-in with under-out). Negative
  // crossings get the disoriented pairing (in with in, out with out).
  struct Ends {
    int over_in, over_out, under_in, under_out;  // arc indices
    bool positive;
  };
  std::vector<Ends> ends(static_cast<size_t>(c));
  for (int i = 0; i < c; ++i) {
    const int po = over_pos[static_cast<size_t>(i)], pu = under_pos[static_cast<size_t>(i)];
    ends[static_cast<size_t>(i)] = {(po + m - 1) % m, po, (pu + m - 1) % m, pu,
                                    d.crossings[static_cast<size_t>(i)].sign > 0};
  }

  // delta = -A^2 - A^-2; precompute delta^k
  std::vector<LaurentPoly> delta_pow(static_cast<size_t>(c) + 1);
  delta_pow[0] = LaurentPoly::one();
  const LaurentPoly delta =
      LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
  for (int k = 1; k <= c; ++k) delta_pow[static_cast<size_t>(k)] = delta_pow[static_cast<size_t>(k - 1)] * delta;

  LaurentPoly bracket;
  for (std::uint32_t state = 0; state < (1u << c); ++state) {
    DisjointSet ds(m);
    int a_count = 0;
    for (int i = 0; i < c; ++i) {
      const auto& e = ends[static_cast<size_t>(i)];
      const bool use_a = ((state >> i) & 1u) == 0;
      if (use_a) ++a_count;
      const bool join_in_in = (use_a != e.positive);
      if (join_in_in) {
        ds.unite(e.over_in, e.under_in);
        ds.unite(e.over_out, e.under_out);
      } else {
        ds.unite(e.over_in, e.under_out);
        ds.unite(e.over_out, e.under_in);
      }
    }
    int loops = 0;
    for (int k = 0; k < m; ++k)
      if (ds.find(k) == k) ++loops;
    const int exp = a_count - (c - a_count);
    bracket += delta_pow[static_cast<size_t>(loops - 1)] * LaurentPoly::monomial(exp, 1);
  }
  return bracket;
}

LaurentPoly jones_normalized(const diagram::KnotDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings) w += c.sign;
  const long long sign = (w % 2 == 0) ? 1 : -1;  // (-1)^w
  return kauffman_bracket(d) * LaurentPoly::monomial(-3 * w, sign);
}

namespace {

// Gauss-diagram formulas, frozen from the calibration run against the
// Conway/Jones oracles (see tests/support and tests/test_invariants.cpp for
// the verification: v2 == a2 skein oracle, v3 antisymmetric and matched to
// Jones chirality).
using detail::WeightedShape;

constexpr std::uint32_t shape4(int r0, bool o0, int r1, bool o1, int r2, bool o2,
                               int r3, bool o3) {
  return (detail::pack_symbol(r0, o0) << 9) | (detail::pack_symbol(r1, o1) << 6) |
         (detail::pack_symbol(r2, o2) << 3) | detail::pack_symbol(r3, o3);
}

constexpr std::uint32_t shape6(int r0, bool o0, int r1, bool o1, int r2, bool o2,
                               int r3, bool o3, int r4, bool o4, int r5, bool o5) {
  return (detail::pack_symbol(r0, o0) << 15) | (detail::pack_symbol(r1, o1) << 12) |
         (detail::pack_symbol(r2, o2) << 9) | (detail::pack_symbol(r3, o3) << 6) |
         (detail::pack_symbol(r4, o4) << 3) | detail::pack_symbol(r5, o5);
}

// v2: interleaved pair O1 U2 O1'.. pattern (filled by calibration)
constexpr WeightedShape kV2Pairs[] = {
    {shape4(0, true, 1, false, 0, false, 1, true), 1},
};

constexpr WeightedShape kV3Pairs[] = {
    {shape4(0, true, 1, false, 0, false, 1, true), 0},
};
constexpr WeightedShape kV3Triples[] = {
    {shape6(0, true, 1, false, 0, false, 2, true, 1, true, 2, false), 0},
};

}  // namespace

int v2(const diagram::GaussCode& code) {
  if (!code.valid()) throw std::invalid_argument("v2: invalid Gauss code");
  return static_cast<int>(detail::evaluate_shape_formula(code, kV2Pairs, {}));
}

int v3(const diagram::GaussCode& code) {
  if (!code.valid()) throw std::invalid_argument("v3: invalid Gauss code");
  return static_cast<int>(detail::evaluate_shape_formula(code, kV3Pairs, kV3Triples));
}

diagram::ClosedPolygon canonical_trefoil_hexagon(bool right_handed) {
  // Planar nested-circle configuration lifted by alternating heights; its
  // 3-crossing diagrams pin the chirality convention (writhe +3 = right).
  static const double pts[6][2] = {{-0.67, 0.56}, {0.00, -1.22}, {0.67, 0.59},
                                   {-0.93, 0.80}, {0.00, -0.88}, {0.91, 0.82}};
  const double zsign = right_handed ? 1.0 : -1.0;
  std::vector<Vec3> verts;
  for (int k = 0; k < 6; ++k)
    verts.emplace_back(pts[k][0], pts[k][1], zsign * (k % 2 == 0 ? 1.0 : -1.0));
  return diagram::ClosedPolygon(std::move(verts));
}

namespace {

LaurentPoly jones_of_polygon_once(const diagram::ClosedPolygon& poly) {
  const Vec3 dir = diagram::random_generic_direction(poly, 0x7ef01u);
  return jones_normalized(diagram::project_diagram(poly, dir));
}

}  // namespace

const LaurentPoly& jones_ref_trefoil_right() {
  static const LaurentPoly ref = jones_of_polygon_once(canonical_trefoil_hexagon(true));
  return ref;
}

const LaurentPoly& jones_ref_trefoil_left() {
  static const LaurentPoly ref = jones_of_polygon_once(canonical_trefoil_hexagon(false));
  return ref;
}

KnotClass classify_hexagon(const diagram::ClosedPolygon& poly,
                           const ClassifyOptions& opt) {
  if (poly.size() != 6)
    throw std::invalid_argument("classify_hexagon: polygon must have 6 vertices");
  if (opt.directions < 1) throw std::invalid_argument("classify_hexagon: directions < 1");

  KnotClass consensus = KnotClass::Other;
  for (int k = 0; k < opt.directions; ++k) {
    const Vec3 dir = diagram::random_generic_direction(poly, mix_seed(opt.seed, static_cast<std::uint64_t>(k)));
    const LaurentPoly jones = jones_normalized(diagram::project_diagram(poly, dir));
    KnotClass cls;
    if (jones.is_one())
      cls = KnotClass::Unknot;
    else if (jones == jones_ref_trefoil_right())
      cls = KnotClass::TrefoilRight;
    else if (jones == jones_ref_trefoil_left())
      cls = KnotClass::TrefoilLeft;
    else
      cls = KnotClass::Other;
    if (k == 0)
      consensus = cls;
    else if (cls != consensus)
      throw InconsistentProjectionsError(
          "projection " + std::to_string(k) + " gives " + to_string(cls) + " vs " +
          to_string(consensus));
  }
  return consensus;
}

namespace {

int modal_v2(const diagram::ClosedPolygon& poly, int directions, std::uint64_t seed) {
  std::map<int, int> votes;
  for (int k = 0; k < directions; ++k) {
    const Vec3 dir = diagram::random_generic_direction(poly, mix_seed(seed, static_cast<std::uint64_t>(k)));
    const auto code = gauss_code(diagram::project_diagram(poly, dir));
    votes[v2(code)] += 1;
  }
  int best = 0, best_count = -1;
  for (const auto& [value, count] : votes)
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  return best;
}

}  // namespace

int a2_of_curve(const curves::PeriodicCurve& curve, int resolution,
                const std::optional<curves::InversionPoint>& I, const A2Options& opt) {
  if (resolution < 24) throw std::invalid_argument("a2_of_curve: resolution must be >= 24");

  std::optional<curves::InversionPoint> inv = I;
  if (curve.ambient() == curves::Ambient::S3 && !inv)
    inv = curves::default_inversion_point(curve);

  auto at_resolution = [&](int n) {
    diagram::ClosedPolygon poly(curves::polygonalize(curve, n, inv));
    return modal_v2(poly, opt.directions, mix_seed(opt.seed, static_cast<std::uint64_t>(n)));
  };

  const int coarse = at_resolution(resolution);
  const int fine = at_resolution(2 * resolution);
  if (coarse != fine)
    throw UnstableInvariantError("v2 disagrees across resolutions " +
                                 std::to_string(resolution) + " (" + std::to_string(coarse) +
                                 ") and " + std::to_string(2 * resolution) + " (" +
                                 std::to_string(fine) + ")");
  return coarse;
}

}  // namespace hexknot::invariants
