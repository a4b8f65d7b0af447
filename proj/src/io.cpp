#include "hexknot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hexknot/errors.hpp"

namespace hexknot::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string fixed6(double x) {
  char buf[64];
  if (x == 0.0) x = 0.0;  // normalize -0
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace

std::string curve_to_json(const curves::PeriodicCurve& c) {
  json j;
  j["ambient"] = c.ambient() == curves::Ambient::S3 ? "S3" : "R3";
  j["label"] = c.label();
  json coords = json::array();
  for (int axis = 0; axis < c.dim(); ++axis) {
    json list = json::array();
    for (const auto& term : c.coords()[static_cast<size_t>(axis)]) {
      json t;
      t["freq"] = term.freq;
      t["cos"] = term.cos_coeff;
      t["sin"] = term.sin_coeff;
      list.push_back(t);
    }
    coords.push_back(list);
  }
  j["coords"] = coords;
  return j.dump(2);
}

curves::PeriodicCurve curve_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const std::string ambient_str = j.at("ambient").get<std::string>();
    if (ambient_str != "R3" && ambient_str != "S3")
      throw ParseError("ambient must be R3 or S3, got '" + ambient_str + "'");
    const auto ambient =
        ambient_str == "S3" ? curves::Ambient::S3 : curves::Ambient::R3;
    const auto& coords = j.at("coords");
    const size_t expected = ambient == curves::Ambient::S3 ? 4 : 3;
    if (!coords.is_array() || coords.size() != expected)
      throw ParseError("coords must hold " + std::to_string(expected) +
                       " coordinate lists for " + ambient_str);
    std::array<std::vector<curves::FourierTerm>, 4> lists;
    for (size_t axis = 0; axis < coords.size(); ++axis) {
      for (const auto& t : coords[axis]) {
        curves::FourierTerm term;
        term.freq = t.at("freq").get<int>();
        term.cos_coeff = t.value("cos", 0.0);
        term.sin_coeff = t.value("sin", 0.0);
        lists[axis].push_back(term);
      }
    }
    return curves::PeriodicCurve(ambient, lists, j.value("label", "curve"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("curve JSON: ") + e.what());
  }
}

std::string polygon_to_json(const diagram::ClosedPolygon& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back({v.x(), v.y(), v.z()});
  json j;
  j["vertices"] = verts;
  return j.dump(2);
}

diagram::ClosedPolygon polygon_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const json& verts = j.is_array() ? j : j.at("vertices");
    std::vector<Vec3> out;
    for (const auto& v : verts) {
      if (!v.is_array() || v.size() != 3)
        throw ParseError("each vertex must be a triple [x,y,z]");
      out.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    return diagram::ClosedPolygon(std::move(out));
  } catch (const json::exception& e) {
    throw ParseError(std::string("polygon JSON: ") + e.what());
  }
}

diagram::ClosedPolygon polygon_from_csv(const std::string& text) {
  std::vector<Vec3> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double x, y, z;
    if (std::sscanf(line.c_str(), "%lf , %lf , %lf", &x, &y, &z) != 3 &&
        std::sscanf(line.c_str(), "%lf %lf %lf", &x, &y, &z) != 3)
      throw ParseError("CSV line " + std::to_string(lineno) + ": expected x,y,z");
    out.emplace_back(x, y, z);
  }
  return diagram::ClosedPolygon(std::move(out));
}

diagram::ClosedPolygon polygon_from_text(const std::string& text) {
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{' || ch == '[') return polygon_from_json(text);
    return polygon_from_csv(text);
  }
  throw ParseError("empty polygon input");
}

std::string diagram_to_json(const diagram::KnotDiagram& d) {
  json j;
  j["type"] = "diagram";
  json verts = json::array();
  for (const auto& v : d.projected) verts.push_back({v.x(), v.y()});
  j["projected"] = verts;
  j["direction"] = {d.direction.x(), d.direction.y(), d.direction.z()};
  json crossings = json::array();
  for (const auto& c : d.crossings) {
    json cj;
    cj["over"] = c.over_edge;
    cj["under"] = c.under_edge;
    cj["over_t"] = c.over_param;
    cj["under_t"] = c.under_param;
    cj["sign"] = c.sign;
    cj["point"] = {c.point.x(), c.point.y()};
    crossings.push_back(cj);
  }
  j["crossings"] = crossings;
  return j.dump(2);
}

std::string config_to_json(const config_geometry::PlanarConfiguration& cfg,
                           const config_geometry::SegmentData* segments,
                           const std::array<double, 6>* heights) {
  json j;
  j["type"] = "config";
  json pts = json::array();
  for (const auto& p : cfg.points) pts.push_back({p.x(), p.y(), p.z()});
  j["points"] = pts;
  j["plane"] = {{"normal", {cfg.plane.normal.x(), cfg.plane.normal.y(), cfg.plane.normal.z()}},
                {"offset", cfg.plane.offset}};
  j["coplanarity_residual"] = cfg.coplanarity_residual;
  json coords = json::array();
  for (const auto& p : cfg.plane_coords) coords.push_back({p.x(), p.y()});
  j["plane_coords"] = coords;
  if (cfg.config_type) j["config_type"] = cfg.config_type;
  json sided = json::array();
  for (const auto& s : cfg.sidedness) {
    if (!s)
      sided.push_back(nullptr);
    else
      sided.push_back(*s == config_geometry::Sidedness::OneSided ? "one-sided"
                                                                 : "two-sided");
  }
  j["sidedness"] = sided;
  if (segments) {
    j["lengths"] = {{"a", segments->a}, {"b", segments->b}, {"l", segments->l}};
    json alphas = json::array();
    for (const auto& a : segments->alphas) alphas.push_back(a);
    j["alphas"] = alphas;
  }
  if (heights) j["heights"] = *heights;
  return j.dump(2);
}

std::string laurent_to_json(const LaurentPoly& p) {
  json j = json::object();
  for (const auto& [exp, coeff] : p.coeffs()) j[std::to_string(exp)] = coeff;
  return j.dump();
}

LaurentPoly laurent_from_json(const std::string& text) {
  const json j = parse(text);
  LaurentPoly p;
  for (const auto& [key, value] : j.items())
    p.set(std::stoi(key), value.get<long long>());
  return p;
}

std::string find_to_ndjson_line(const search::TrefoilFind& find,
                                const curves::PeriodicCurve& curve) {
  json j;
  j["t"] = find.tuple.t;
  j["class"] = invariants::to_string(find.knot_class);
  j["sample_index"] = find.sample_index;
  j["verification_directions"] = find.verification_directions;
  const auto res = config_geometry::prism_residual(curve, find.tuple);
  j["residuals"] = res.components;
  return j.dump();
}

std::string trace_to_json(const search::TraceResult& trace) {
  json j;
  j["closed"] = trace.closed;
  j["boundary"] = trace.boundary;
  json pts = json::array();
  for (const auto& p : trace.points) {
    json pj;
    pj["t"] = p.tuple.t;
    pj["residual"] = p.residual;
    pj["step"] = p.step;
    pj["class"] = invariants::to_string(p.knot_class);
    pj["planar"] = p.planar;
    pj["cospherical"] = p.cospherical;
    pj["generic"] = p.generic;
    pts.push_back(pj);
  }
  j["points"] = pts;
  return j.dump(2);
}

namespace {

struct Canvas {
  double min_x = 0, min_y = 0, scale = 1;
  static constexpr double kSize = 640.0;
  static constexpr double kMargin = 40.0;

  static Canvas fit(const std::vector<Vec2>& pts) {
    Canvas c;
    double max_x = -1e300, max_y = -1e300;
    c.min_x = 1e300;
    c.min_y = 1e300;
    for (const auto& p : pts) {
      c.min_x = std::min(c.min_x, p.x());
      c.min_y = std::min(c.min_y, p.y());
      max_x = std::max(max_x, p.x());
      max_y = std::max(max_y, p.y());
    }
    const double span = std::max({max_x - c.min_x, max_y - c.min_y, 1e-9});
    c.scale = (kSize - 2 * kMargin) / span;
    return c;
  }
  double x(const Vec2& p) const { return kMargin + (p.x() - min_x) * scale; }
  double y(const Vec2& p) const { return kMargin + (p.y() - min_y) * scale; }
};

void svg_segment(std::ostringstream& os, const Canvas& c, const Vec2& a, const Vec2& b,
                 const char* stroke) {
  os << "  <line x1=\"" << fixed6(c.x(a)) << "\" y1=\"" << fixed6(c.y(a)) << "\" x2=\""
     << fixed6(c.x(b)) << "\" y2=\"" << fixed6(c.y(b)) << "\" stroke=\"" << stroke
     << "\" stroke-width=\"2\"/>\n";
}

std::string render_diagram_svg(const json& j) {
  std::vector<Vec2> verts;
  for (const auto& v : j.at("projected")) verts.emplace_back(v[0].get<double>(), v[1].get<double>());
  const int n = static_cast<int>(verts.size());
  const Canvas canvas = Canvas::fit(verts);

  // under-strand gaps per edge, in edge parameters
  std::vector<std::vector<double>> gaps(static_cast<size_t>(n));
  if (j.contains("crossings"))
    for (const auto& c : j.at("crossings"))
      gaps[c.at("under").get<size_t>()].push_back(c.at("under_t").get<double>());

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::kSize
     << "\" height=\"" << Canvas::kSize << "\" viewBox=\"0 0 " << Canvas::kSize << ' '
     << Canvas::kSize << "\">\n";
  for (int e = 0; e < n; ++e) {
    const Vec2 a = verts[static_cast<size_t>(e)];
    const Vec2 b = verts[static_cast<size_t>((e + 1) % n)];
    auto& g = gaps[static_cast<size_t>(e)];
    std::sort(g.begin(), g.end());
    const double edge_len = (b - a).norm() * canvas.scale;
    const double gap_half = edge_len > 1e-9 ? std::min(0.2, 12.0 / edge_len) : 0.0;
    double cursor = 0.0;
    for (const double t : g) {
      const double lo = std::max(cursor, t - gap_half);
      if (lo > cursor + 1e-9)
        svg_segment(os, canvas, a + cursor * (b - a), a + lo * (b - a), "black");
      cursor = std::min(1.0, t + gap_half);
    }
    if (cursor < 1.0) svg_segment(os, canvas, a + cursor * (b - a), b, "black");
  }
  for (int i = 0; i < n; ++i) {
    os << "  <circle cx=\"" << fixed6(canvas.x(verts[static_cast<size_t>(i)])) << "\" cy=\""
       << fixed6(canvas.y(verts[static_cast<size_t>(i)])) << "\" r=\"3\" fill=\"black\"/>\n";
    os << "  <text x=\"" << fixed6(canvas.x(verts[static_cast<size_t>(i)]) + 6) << "\" y=\""
       << fixed6(canvas.y(verts[static_cast<size_t>(i)]) - 6) << "\" font-size=\"12\">"
       << (i + 1) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_config_svg(const json& j) {
  std::vector<Vec2> pts;
  for (const auto& v : j.at("plane_coords")) pts.emplace_back(v[0].get<double>(), v[1].get<double>());
  if (pts.size() != 6) throw ParseError("config render expects 6 plane_coords");
  const Canvas canvas = Canvas::fit(pts);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Canvas::kSize
     << "\" height=\"" << Canvas::kSize << "\" viewBox=\"0 0 " << Canvas::kSize << ' '
     << Canvas::kSize << "\">\n";
  for (int e = 0; e < 6; ++e)
    svg_segment(os, canvas, pts[static_cast<size_t>(e)], pts[static_cast<size_t>((e + 1) % 6)], "black");
  const bool has_heights = j.contains("heights");
  for (int i = 0; i < 6; ++i) {
    os << "  <circle cx=\"" << fixed6(canvas.x(pts[static_cast<size_t>(i)])) << "\" cy=\""
       << fixed6(canvas.y(pts[static_cast<size_t>(i)])) << "\" r=\"3\" fill=\"black\"/>\n";
    os << "  <text x=\"" << fixed6(canvas.x(pts[static_cast<size_t>(i)]) + 6) << "\" y=\""
       << fixed6(canvas.y(pts[static_cast<size_t>(i)]) - 6) << "\" font-size=\"12\">p"
       << (i + 1);
    if (has_heights) {
      os << " (f=" << fixed6(j.at("heights")[static_cast<size_t>(i)].get<double>()) << ")";
    }
    os << "</text>\n";
  }
  if (j.contains("lengths")) {
    const auto& lengths = j.at("lengths");
    int row = 0;
    for (const char* name : {"a", "b", "l"}) {
      os << "  <text x=\"10\" y=\"" << fixed6(16.0 + 14.0 * row) << "\" font-size=\"12\">"
         << name << " =";
      for (const auto& v : lengths.at(name)) os << ' ' << fixed6(v.get<double>());
      os << "</text>\n";
      ++row;
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const std::string& export_json) {
  const json j = parse(export_json);
  const std::string type = j.value("type", "");
  if (type == "diagram") return render_diagram_svg(j);
  if (type == "config") return render_config_svg(j);
  throw ParseError("export JSON must carry type 'diagram' or 'config'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

}  // namespace hexknot::io
