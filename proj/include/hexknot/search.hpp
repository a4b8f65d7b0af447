#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexknot/config_geometry.hpp"
#include "hexknot/curves.hpp"
#include "hexknot/invariants.hpp"

namespace hexknot::search {

enum class SearchTarget { AnyTrefoil, LeftOnly, RightOnly, Both };

SearchTarget target_from_string(const std::string& s);
std::string to_string(SearchTarget t);

struct SearchBudget {
  long max_samples = 100000;
  std::uint64_t rng_seed = 0;
  int refinement_steps = 0;  // local Gaussian (sigma=0.01) samples per find
  SearchTarget target = SearchTarget::AnyTrefoil;
};

struct TrefoilFind {
  config_geometry::SixTuple tuple;
  invariants::KnotClass knot_class = invariants::KnotClass::Other;
  long sample_index = 0;
  int verification_directions = 0;
};

struct SearchStats {
  long samples = 0;
  long embedded = 0;
  long candidates = 0;  // passed the single-direction v2 prefilter
  long found_left = 0;
  long found_right = 0;
  double seconds = 0.0;
  bool target_met = false;
};

struct SearchResult {
  std::vector<TrefoilFind> finds;
  SearchStats stats;
};

/// Stratified random search for inscribed trefoils. Deterministic for a
/// fixed seed regardless of worker count; stops at the budget or as soon as
/// the target is satisfied (Both needs one find of each chirality). Every
/// returned find has been re-verified by classify_hexagon with 10 fresh
/// directions. S3 curves are projected through I (default_inversion_point
/// when omitted).
SearchResult find_inscribed_trefoils(
    const curves::PeriodicCurve& curve, const SearchBudget& budget,
    const std::optional<curves::InversionPoint>& I = std::nullopt,
    int threads = 0);

struct SolveOptions {
  double tol = 1e-10;     // on the public residual norm
  int max_iterations = 200;
  double lambda0 = 1e-3;  // LM damping: x10 on reject, /10 on accept
  double min_gap = 1e-6;  // OrderingCollapse threshold
};

/// Damped least-squares (Levenberg-Marquardt) on the prism residual over the
/// six parameters. Steps that break the strict ordering (or the width-1
/// window) are rejected. Throws NoConvergenceError / OrderingCollapseError.
config_geometry::PrismConfiguration solve_prism(const curves::PeriodicCurve& curve,
                                                const config_geometry::SixTuple& seed,
                                                const SolveOptions& opt = {});

struct TracePoint {
  config_geometry::SixTuple tuple;
  double residual = 0.0;
  double step = 0.0;  // arc-length step that produced this point
  invariants::KnotClass knot_class = invariants::KnotClass::Other;
  bool planar = false;
  bool cospherical = false;
  bool generic = true;  // classification succeeded with the standard tolerances
};

struct TraceResult {
  std::vector<TracePoint> points;
  bool closed = false;    // returned to the start (mod cyclic shift)
  bool boundary = false;  // stopped at an ordering collapse
};

struct TraceOptions {
  double step = 1e-3;
  double min_step = 1e-5;
  double max_step = 1e-2;
  int max_steps = 1000;
  double tol = 1e-10;
  std::uint64_t seed = 0;  // classification directions
};

/// Predictor-corrector continuation along the 1-dimensional prism solution
/// set: tangent from the residual Jacobian null space, corrector constrained
/// orthogonally to it. Reports the hexagon class and planarity/cosphericity
/// per visited configuration. Throws TangentDegenerateError when the null
/// space dimension is not 1.
TraceResult trace_prism_manifold(
    const curves::PeriodicCurve& curve,
    const config_geometry::PrismConfiguration& start, const TraceOptions& opt = {},
    const std::optional<curves::InversionPoint>& I = std::nullopt);

struct PlanarEvent {
  int index = 0;
  config_geometry::PlanarConfiguration cfg;
  int config_type = 0;  // 0 when unclassifiable
  std::optional<bool> bad;
  double theta = 0.0;  // against the first event's plane
};

/// Coplanar configurations along a trace, classified, with the bad predicate
/// where applicable and the dihedral angle against the first event's plane.
std::vector<PlanarEvent> scan_planar_events(
    const TraceResult& trace, const curves::PeriodicCurve& curve,
    const std::optional<curves::InversionPoint>& I = std::nullopt,
    double coplanarity_tol = 1e-8);

}  // namespace hexknot::search
