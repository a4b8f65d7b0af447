#pragma once

#include <string>

#include "hexknot/config_geometry.hpp"
#include "hexknot/curves.hpp"
#include "hexknot/diagram.hpp"
#include "hexknot/invariants.hpp"
#include "hexknot/laurent.hpp"
#include "hexknot/search.hpp"

namespace hexknot::io {

// Curve JSON:
//   {"ambient":"R3"|"S3","label":str,
//    "coords":[[{"freq":int,"cos":num,"sin":num},...] x dim]}
std::string curve_to_json(const curves::PeriodicCurve& c);
curves::PeriodicCurve curve_from_json(const std::string& text);

// Polygon JSON {"vertices":[[x,y,z],...]} or CSV "x,y,z" per line.
std::string polygon_to_json(const diagram::ClosedPolygon& p);
diagram::ClosedPolygon polygon_from_json(const std::string& text);
diagram::ClosedPolygon polygon_from_csv(const std::string& text);
/// Dispatch on leading '{' / '['.
diagram::ClosedPolygon polygon_from_text(const std::string& text);

/// Diagram export for the SVG renderer.
std::string diagram_to_json(const diagram::KnotDiagram& d);

/// Planar configuration export (points, plane, labels, type, lengths,
/// fractions); heights optional.
std::string config_to_json(const config_geometry::PlanarConfiguration& cfg,
                           const config_geometry::SegmentData* segments = nullptr,
                           const std::array<double, 6>* heights = nullptr);

// Laurent polynomials as {"exponent": coefficient} with string keys.
std::string laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const std::string& text);

/// One NDJSON record per find: {"t":[...],"class":...,"residuals":...,
/// "verification_directions":...}.
std::string find_to_ndjson_line(const search::TrefoilFind& find,
                                const curves::PeriodicCurve& curve);

std::string trace_to_json(const search::TraceResult& trace);

/// Deterministic SVG for a diagram or configuration export JSON: projected
/// edges with gaps at under-strands, labels when heights/lengths are present.
/// Byte-identical output for identical input.
std::string render_svg(const std::string& export_json);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hexknot::io
