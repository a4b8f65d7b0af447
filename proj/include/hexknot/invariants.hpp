#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hexknot/curves.hpp"
#include "hexknot/diagram.hpp"
#include "hexknot/laurent.hpp"

namespace hexknot::invariants {

enum class KnotClass { Unknot, TrefoilLeft, TrefoilRight, Other };

std::string to_string(KnotClass c);
KnotClass mirrored(KnotClass c);

/// Kauffman bracket by the full 2^c state sum with exact integer
/// coefficients. Requires crossing count <= 20 (TooManyCrossingsError).
LaurentPoly kauffman_bracket(const diagram::KnotDiagram& d);

/// (-A)^(-3w) * bracket: ambient isotopy invariant in the variable A.
LaurentPoly jones_normalized(const diagram::KnotDiagram& d);

/// Degree-2 Gauss diagram invariant; equals the quadratic Conway coefficient
/// a2 of the underlying knot. Basepoint- and projection-independent,
/// mirror-invariant.
int v2(const diagram::GaussCode& code);

/// Degree-3 Gauss diagram invariant, mirror-antisymmetric, +-1 on trefoils.
/// Used to certify handedness independently of the Jones route.
int v3(const diagram::GaussCode& code);

/// The polygon that pins this repo's chirality convention: its 3-crossing
/// diagrams have writhe +3 (right) / -3 (left) under the det sign rule.
diagram::ClosedPolygon canonical_trefoil_hexagon(bool right_handed);

/// Pinned Jones references, computed once from the canonical hexagons.
const LaurentPoly& jones_ref_trefoil_right();
const LaurentPoly& jones_ref_trefoil_left();

struct ClassifyOptions {
  int directions = 5;
  std::uint64_t seed = 0;
};

/// Consensus classification of an embedded hexagon over `directions` generic
/// projections. Unanimity is required; disagreement raises
/// InconsistentProjectionsError. Other is returned only when the Jones
/// polynomial matches no reference (a pipeline bug for hexagons).
KnotClass classify_hexagon(const diagram::ClosedPolygon& poly,
                           const ClassifyOptions& opt = {});

struct A2Options {
  int directions = 7;
  std::uint64_t seed = 0;
};

/// a2 of a smooth curve: polygonalize at `resolution`, take the modal v2 over
/// generic directions, and require agreement with the value at twice the
/// resolution (UnstableInvariantError otherwise).
int a2_of_curve(const curves::PeriodicCurve& curve, int resolution,
                const std::optional<curves::InversionPoint>& I = std::nullopt,
                const A2Options& opt = {});

}  // namespace hexknot::invariants
