#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "hexknot/curves.hpp"
#include "hexknot/geometry.hpp"

namespace hexknot::config_geometry {

/// Ordered parameters 0 <= t1 < ... < t6 < 1 on a curve.
struct SixTuple {
  std::array<double, 6> t{};

  /// Throws std::invalid_argument unless strictly ordered inside [0,1).
  void validate() const;

  /// Reduce mod 1 and rotate indices so the tuple is strictly ascending in
  /// [0,1). Valid for any cyclically ordered window of width < 1.
  static SixTuple canonicalize(const std::array<double, 6>& raw);

  /// Index shift k in 0..5: other ~ this with labels rotated by k.
  /// Distance between canonical forms after the best cyclic phase alignment.
  double cyclic_distance(const SixTuple& other) const;
};

/// Result of the prism concurrency residual. The construction is projective
/// (homogeneous coordinates), so three parallel diagonals meeting at a point
/// at infinity score zero exactly like an affine concurrence.
struct PrismResidual {
  /// Public 6-vector: components 0..2 are the pairwise projective line
  /// distances (sines of the smallest principal angle) for pairs (12),(13),
  /// (23); components 3..5 are the distances from the consensus apex to each
  /// line. Zero iff the three diagonals concur (possibly at infinity).
  std::array<double, 6> components{};
  double norm = 0.0;

  /// Signed smooth residual used by the solver: the consensus apex's
  /// components orthogonal to each line's span, stacked. 3*(d-1) entries.
  Eigen::VectorXd smooth;

  /// Homogeneous apex (d+1 coords, unit). Last coordinate ~ 0 means the
  /// apex is at infinity (parallel diagonals).
  Eigen::VectorXd apex_homogeneous;

  bool apex_at_infinity(double tol = 1e-9) const;
  /// Affine apex; throws when at infinity.
  Eigen::VectorXd apex_affine() const;
};

/// Residual for six explicit points (dim = 3 or 4, one point per column).
/// Diagonal chords pair (0,3), (1,4), (2,5). Throws DegenerateChordError.
PrismResidual prism_residual_points(const Eigen::MatrixXd& points);

/// Solver entry point: aligns the apex sign against `align` (when non-null)
/// so finite differences of `smooth` stay continuous across evaluations.
PrismResidual prism_residual_points(const Eigen::MatrixXd& points,
                                    const Eigen::VectorXd* align);

/// Curve samples at the tuple parameters, one point per column (d x 6).
Eigen::MatrixXd tuple_points(const curves::PeriodicCurve& curve, const SixTuple& tuple);

/// Residual for a tuple on a curve (evaluated in the curve's ambient space).
PrismResidual prism_residual(const curves::PeriodicCurve& curve, const SixTuple& tuple);

/// A 6-tuple on a curve whose diagonals (1,4),(2,5),(3,6) concur at p.
struct PrismConfiguration {
  SixTuple tuple;
  Eigen::MatrixXd points;          // d x 6
  Eigen::VectorXd apex_homogeneous;
  std::array<std::pair<int, int>, 3> lines{{{0, 3}, {1, 4}, {2, 5}}};
  double residual_norm = 0.0;
  int cyclic_class_id = 0;  // index shift applied when canonicalizing the seed
  bool planar = false;      // the six points are coplanar within tolerance
  bool cospherical = false;
};

enum class Sidedness { OneSided, TwoSided };

struct SidednessResult {
  Sidedness value = Sidedness::OneSided;
  bool degenerate = false;  // sigma identically ~0 on the window (curve in plane)
};

/// Does the signed distance to P change sign on (t-h, t+h)? Sampled, then
/// refined by bisection. Throws WindowTooLargeError when another tuple
/// parameter falls inside the window.
SidednessResult one_sidedness(const curves::PeriodicCurve& curve, double t,
                              const Plane& plane, double window,
                              std::span<const double> other_params = {});

/// One in-plane crossing between two hexagon edges.
struct EdgeCrossing {
  int edge_a = 0;
  int edge_b = 0;
  double pos_a = 0;  // fraction along edge_a from its start vertex
  double pos_b = 0;
  Vec2 point{0, 0};
};

/// Crossing fractions and the named segment lengths of the length diagram
/// (edges 1-2 x 4-5 -> a, 3-4 x 6-1 -> b, 5-6 x 2-3 -> l).
struct SegmentData {
  std::vector<EdgeCrossing> crossings;            // all pairwise, unordered
  std::array<std::vector<double>, 6> alphas;      // per edge: segment length fractions, summing to 1
  std::array<double, 4> a{}, b{}, l{};            // indices 0..3 = labels 1..4

  double a_tilde(int i) const;  // i in 1..4
  double b_tilde(int i) const;
  double l_tilde(int i) const;

  const EdgeCrossing* find(int edge_a, int edge_b) const;  // order-insensitive
};

/// A coplanar 6-tuple with its plane, in-plane coordinates and labels.
struct PlanarConfiguration {
  std::array<Vec3, 6> points;
  Plane plane;
  double coplanarity_residual = 0.0;  // relative to configuration diameter
  std::array<Vec2, 6> plane_coords;   // right-handed in-plane basis
  std::array<std::optional<Sidedness>, 6> sidedness;
  int config_type = 0;  // 1..5 once classified, 0 = unclassified

  static PlanarConfiguration from_points(const std::array<Vec3, 6>& pts,
                                         double coplanarity_tol = 1e-8);
  double diameter() const;
  /// Lift: points + f_i * plane normal.
  std::array<Vec3, 6> lifted(const std::array<double, 6>& heights) const;
};

/// Signed orthogonal heights with the epsilon bookkeeping of the case
/// constructions. "<<" relations are realized by the ratio parameters.
struct HeightAssignment {
  std::array<double, 6> f{};
  double eps = 0, eps_prime = 0, eps_dprime = 0;
  int case_id = 0;        // 1, 2 or 3
  int sigma_variant = 0;  // 0 base, 1 sigma_r, 2 sigma_f, 3 both
  bool mirrored = false;  // satisfied the reversed rule set
};

/// Crossing fractions along every edge plus the a/b/l length labels.
/// Throws MissingCrossingError unless the three core crossings
/// (1-2 x 4-5), (3-4 x 6-1), (5-6 x 2-3) all exist.
SegmentData segment_data(const PlanarConfiguration& cfg);

/// The seven height inequalities for a trefoil resolution, evaluated at the
/// in-plane crossing points. Inequality directions follow the resolved
/// over/under pattern of the case figures; rules whose crossing pair is
/// absent in this configuration are vacuous, but the three core crossings
/// must exist. `mirrored` reverses every inequality (opposite handedness).
bool check_crossing_rules(const HeightAssignment& f, const PlanarConfiguration& cfg,
                          bool mirrored);

struct CaseHeightOptions {
  double scale = 1.0;        // magnitude of the largest epsilon
  double ratio = 100.0;      // starting ratio realizing "<<"
  double max_ratio = 1e6;    // doubling search cap
};

/// Height assignment from the case analysis (one-sided points get height 0).
/// U is the set of one-sided indices (0-based). The base patterns and their
/// sigma_r = (16)(25)(34), sigma_f = (13)(46) images are tried; epsilon
/// magnitudes are searched until check_crossing_rules passes. Throws
/// UncoveredCaseError when no case kernel contains U, with the orbit in the
/// message.
HeightAssignment construct_case_heights(const PlanarConfiguration& cfg,
                                        const std::set<int>& one_sided,
                                        const CaseHeightOptions& opt = {});

/// Lemma-style obstruction predicate for nested-circle configurations:
/// true iff a4~/a2~ = l1~/l3~ and a3~/a1~ = b3~/b2~ within relative 1e-9.
/// Requires the core crossing pattern (propagates MissingCrossingError).
bool is_bad_configuration(const PlanarConfiguration& cfg, double rel_tol = 1e-9);

/// Rigid rotation of the six points about the line (point + t*dir) in the
/// configuration plane by angle eps.
std::array<Vec3, 6> epsilon_rotate(const PlanarConfiguration& cfg,
                                   const Vec3& line_point, const Vec3& line_dir,
                                   double eps);

/// Dihedral angle between the configuration plane and a reference plane,
/// in [0, pi/2].
double config_theta(const PlanarConfiguration& cfg, const Plane& reference);

struct ClassifyConfigOptions {
  double colinear_tol = 1e-6;        // relative to diameter
  double circumcircle_tol = 1e-2;    // S^3 distance from I to the circle preimage
  double concentric_tol = 0.25;      // center offset relative to outer radius
  double phase_split_deg = 60.0;     // type 1 vs type 4 split on pair offsets
};

/// Configuration type 1..5. Tests run in order: (3) a consecutive colinear
/// triple, (2) inversion point on the circumcircle preimage, then the
/// nested-circle families (1)/(4)/(5) split by pair phase and by the winding
/// orientation of the traversal. Throws UnclassifiableConfigError.
int classify_planar_config(const PlanarConfiguration& cfg,
                           const curves::InversionPoint& I,
                           const ClassifyConfigOptions& opt = {});

}  // namespace hexknot::config_geometry
