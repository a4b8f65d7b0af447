#include "hexknot/config_geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hexknot/errors.hpp"

namespace hexknot::config_geometry {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

double fract(double x) { return x - std::floor(x); }

double circ_dist(double a, double b) {
  const double d = std::abs(fract(a) - fract(b));
  return std::min(d, 1.0 - d);
}
}  // namespace

void SixTuple::validate() const {
  for (int i = 0; i < 6; ++i) {
    if (!(t[static_cast<size_t>(i)] >= 0.0 && t[static_cast<size_t>(i)] < 1.0))
      throw std::invalid_argument("SixTuple: parameter " + std::to_string(i) +
                                  " outside [0,1)");
    if (i > 0 && !(t[static_cast<size_t>(i)] > t[static_cast<size_t>(i - 1)]))
      throw std::invalid_argument("SixTuple: parameters not strictly increasing");
  }
}

SixTuple SixTuple::canonicalize(const std::array<double, 6>& raw) {
  std::array<double, 6> reduced{};
  for (int i = 0; i < 6; ++i) reduced[static_cast<size_t>(i)] = fract(raw[static_cast<size_t>(i)]);
  // the cyclic sequence must descend exactly once (the wrap point)
  int drops = 0, wrap = 0;
  for (int i = 0; i < 6; ++i) {
    const double cur = reduced[static_cast<size_t>(i)];
    const double nxt = reduced[static_cast<size_t>((i + 1) % 6)];
    if (nxt <= cur) {
      ++drops;
      wrap = (i + 1) % 6;
    }
  }
  if (drops != 1)
    throw std::invalid_argument("SixTuple: values are not a cyclic window of width < 1");
  SixTuple out;
  for (int i = 0; i < 6; ++i) out.t[static_cast<size_t>(i)] = reduced[static_cast<size_t>((wrap + i) % 6)];
  out.validate();
  return out;
}

double SixTuple::cyclic_distance(const SixTuple& other) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 6; ++k) {
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
      worst = std::max(worst, circ_dist(t[static_cast<size_t>(i)], other.t[static_cast<size_t>((i + k) % 6)]));
    best = std::min(best, worst);
  }
  return best;
}

bool PrismResidual::apex_at_infinity(double tol) const {
  return std::abs(apex_homogeneous(apex_homogeneous.size() - 1)) < tol;
}

Eigen::VectorXd PrismResidual::apex_affine() const {
  const int h = static_cast<int>(apex_homogeneous.size());
  const double w = apex_homogeneous(h - 1);
  if (std::abs(w) < 1e-9)
    throw std::domain_error("prism apex is at infinity (parallel diagonals)");
  return apex_homogeneous.head(h - 1) / w;
}

namespace {

struct LineSpans {
  // per line: h x 2 orthonormal span and h x (h-2) orthonormal complement
  std::array<Eigen::MatrixXd, 3> span;
  std::array<Eigen::MatrixXd, 3> complement;
  int h = 0;
};

LineSpans line_spans(const Eigen::MatrixXd& points) {
  const int d = static_cast<int>(points.rows());
  if (points.cols() != 6 || (d != 3 && d != 4))
    throw std::invalid_argument("prism residual expects a (3|4) x 6 point matrix");
  LineSpans out;
  out.h = d + 1;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd p(out.h), q(out.h);
    p << points.col(i), 1.0;
    q << points.col(i + 3), 1.0;
    if ((points.col(i) - points.col(i + 3)).norm() < 1e-12)
      throw DegenerateChordError("diagonal chord " + std::to_string(i + 1) +
                                 " has coincident endpoints");
    p.normalize();
    Eigen::VectorXd q2 = q - q.dot(p) * p;
    const double n2 = q2.norm();
    if (n2 < 1e-14) throw DegenerateChordError("diagonal chord degenerates projectively");
    q2 /= n2;
    Eigen::MatrixXd span(out.h, 2);
    span.col(0) = p;
    span.col(1) = q2;
    out.span[static_cast<size_t>(i)] = span;

    // complement via full QR of the span
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
    Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(out.h, out.h);
    out.complement[static_cast<size_t>(i)] = full.rightCols(out.h - 2);
  }
  return out;
}

}  // namespace

PrismResidual prism_residual_points(const Eigen::MatrixXd& points,
                                    const Eigen::VectorXd* align) {
  const LineSpans ls = line_spans(points);
  const int h = ls.h;
  const int rows = 3 * (h - 2);

  Eigen::MatrixXd A(rows, h);
  for (int i = 0; i < 3; ++i)
    A.middleRows(i * (h - 2), h - 2) = ls.complement[static_cast<size_t>(i)].transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(h - 1);

  if (align && align->size() == h) {
    if (align->dot(v) < 0) v = -v;
  } else {
    // deterministic sign: largest-magnitude component positive
    int arg = 0;
    for (int i = 1; i < h; ++i)
      if (std::abs(v(i)) > std::abs(v(arg))) arg = i;
    if (v(arg) < 0) v = -v;
  }

  PrismResidual out;
  out.smooth = A * v;
  out.apex_homogeneous = v;

  for (int pair = 0; pair < 3; ++pair) {
    const int i = pair == 0 ? 0 : (pair == 1 ? 0 : 1);
    const int j = pair == 0 ? 1 : 2;
    Eigen::Matrix2d M = ls.span[static_cast<size_t>(i)].transpose() * ls.span[static_cast<size_t>(j)];
    Eigen::JacobiSVD<Eigen::Matrix2d> msvd(M);
    const double c = std::min(1.0, msvd.singularValues()(0));
    out.components[static_cast<size_t>(pair)] = std::sqrt(std::max(0.0, 1.0 - c * c));
  }
  for (int i = 0; i < 3; ++i)
    out.components[static_cast<size_t>(3 + i)] =
        (ls.complement[static_cast<size_t>(i)].transpose() * v).norm();

  double sq = 0.0;
  for (const double c : out.components) sq += c * c;
  out.norm = std::sqrt(sq);
  return out;
}

PrismResidual prism_residual_points(const Eigen::MatrixXd& points) {
  return prism_residual_points(points, nullptr);
}

Eigen::MatrixXd tuple_points(const curves::PeriodicCurve& curve, const SixTuple& tuple) {
  const int d = curve.dim();
  Eigen::MatrixXd pts(d, 6);
  for (int i = 0; i < 6; ++i) {
    const Vec4 p = curve.eval4(tuple.t[static_cast<size_t>(i)]);
    for (int r = 0; r < d; ++r) pts(r, i) = p(r);
  }
  return pts;
}

PrismResidual prism_residual(const curves::PeriodicCurve& curve, const SixTuple& tuple) {
  return prism_residual_points(tuple_points(curve, tuple));
}

SidednessResult one_sidedness(const curves::PeriodicCurve& curve, double t,
                              const Plane& plane, double window,
                              std::span<const double> other_params) {
  if (curve.dim() != 3)
    throw std::invalid_argument("one_sidedness expects an R3 curve (project S3 first)");
  for (const double o : other_params) {
    if (circ_dist(o, t) > 0 && circ_dist(o, t) < window)
      throw WindowTooLargeError("parameter " + std::to_string(o) +
                                " lies inside the window around " + std::to_string(t));
  }

  const double scale = std::max(1e-12, curve.eval3(t).norm() + 1.0);
  const double tiny = 1e-11 * scale;
  auto sigma = [&](double tau) { return plane.signed_distance(curve.eval3(tau)); };

  // limit sign approaching t from one side
  auto side_sign = [&](double dir) -> int {
    const int samples = 128;
    double first_off = 0.0;
    int sign = 0;
    for (int k = samples; k >= 1; --k) {
      const double off = window * k / samples;
      const double s = sigma(t + dir * off);
      if (std::abs(s) > tiny) {
        first_off = off;
        sign = s > 0 ? 1 : -1;
      }
    }
    if (sign == 0) return 0;  // flat on this side
    // bisect toward t to catch a sign flip closer than the sampling grid
    double off = first_off;
    for (int it = 0; it < 40 && off > 1e-15; ++it) {
      off *= 0.5;
      const double s = sigma(t + dir * off);
      if (std::abs(s) > tiny) sign = s > 0 ? 1 : -1;
    }
    return sign;
  };

  const int left = side_sign(-1.0);
  const int right = side_sign(+1.0);
  SidednessResult res;
  if (left == 0 && right == 0) {
    res.value = Sidedness::OneSided;
    res.degenerate = true;  // sigma vanishes identically around t
    return res;
  }
  res.value = (left != 0 && right != 0 && left != right) ? Sidedness::TwoSided
                                                         : Sidedness::OneSided;
  return res;
}

PlanarConfiguration PlanarConfiguration::from_points(const std::array<Vec3, 6>& pts,
                                                     double coplanarity_tol) {
  PlanarConfiguration cfg;
  cfg.points = pts;
  const PlaneFit fit = fit_plane(std::span<const Vec3>(pts.data(), 6));
  cfg.plane = fit.plane;
  double diam = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) diam = std::max(diam, (pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]).norm());
  if (diam < 1e-12) throw std::invalid_argument("configuration collapses to a point");
  cfg.coplanarity_residual = fit.max_abs_distance / diam;
  if (cfg.coplanarity_residual > coplanarity_tol)
    throw std::invalid_argument("points are not coplanar: relative residual " +
                                std::to_string(cfg.coplanarity_residual));
  Vec3 u, v;
  orthonormal_basis(cfg.plane.normal, u, v);
  for (int i = 0; i < 6; ++i) {
    const Vec3 q = cfg.plane.project(pts[static_cast<size_t>(i)]);
    cfg.plane_coords[static_cast<size_t>(i)] = Vec2(u.dot(q), v.dot(q));
  }
  return cfg;
}

double PlanarConfiguration::diameter() const {
  double d = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) d = std::max(d, (points[static_cast<size_t>(i)] - points[static_cast<size_t>(j)]).norm());
  return d;
}

std::array<Vec3, 6> PlanarConfiguration::lifted(const std::array<double, 6>& heights) const {
  std::array<Vec3, 6> out;
  for (int i = 0; i < 6; ++i)
    out[static_cast<size_t>(i)] = points[static_cast<size_t>(i)] + heights[static_cast<size_t>(i)] * plane.normal;
  return out;
}

double SegmentData::a_tilde(int i) const {
  if (i < 1 || i > 4) throw std::out_of_range("a_tilde index");
  const double s01 = a[0] + a[1], s23 = a[2] + a[3];
  return i <= 2 ? a[static_cast<size_t>(i - 1)] / s01 : a[static_cast<size_t>(i - 1)] / s23;
}
double SegmentData::b_tilde(int i) const {
  if (i < 1 || i > 4) throw std::out_of_range("b_tilde index");
  const double s01 = b[0] + b[1], s23 = b[2] + b[3];
  return i <= 2 ? b[static_cast<size_t>(i - 1)] / s01 : b[static_cast<size_t>(i - 1)] / s23;
}
double SegmentData::l_tilde(int i) const {
  if (i < 1 || i > 4) throw std::out_of_range("l_tilde index");
  const double s01 = l[0] + l[1], s23 = l[2] + l[3];
  return i <= 2 ? l[static_cast<size_t>(i - 1)] / s01 : l[static_cast<size_t>(i - 1)] / s23;
}

const EdgeCrossing* SegmentData::find(int ea, int eb) const {
  for (const auto& c : crossings)
    if ((c.edge_a == ea && c.edge_b == eb) || (c.edge_a == eb && c.edge_b == ea)) return &c;
  return nullptr;
}

SegmentData segment_data(const PlanarConfiguration& cfg) {
  SegmentData data;
  auto edge_start = [&](int e) { return cfg.plane_coords[static_cast<size_t>(e)]; };
  auto edge_end = [&](int e) { return cfg.plane_coords[static_cast<size_t>((e + 1) % 6)]; };

  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == 5);
      if (adjacent) continue;
      const auto hit =
          segment_intersect_2d(edge_start(i), edge_end(i), edge_start(j), edge_end(j));
      if (!hit) continue;
      EdgeCrossing c;
      c.edge_a = i;
      c.edge_b = j;
      c.pos_a = hit->s;
      c.pos_b = hit->t;
      c.point = hit->point;
      data.crossings.push_back(c);
    }
  }

  for (int e = 0; e < 6; ++e) {
    std::vector<double> positions;
    for (const auto& c : data.crossings) {
      if (c.edge_a == e) positions.push_back(c.pos_a);
      if (c.edge_b == e) positions.push_back(c.pos_b);
    }
    std::sort(positions.begin(), positions.end());
    auto& alpha = data.alphas[static_cast<size_t>(e)];
    double prev = 0.0;
    for (const double p : positions) {
      alpha.push_back(p - prev);
      prev = p;
    }
    alpha.push_back(1.0 - prev);
  }

  // Length diagram: crossings (1-2 x 4-5) -> a, (3-4 x 6-1) -> b, (5-6 x 2-3) -> l.
  const EdgeCrossing* xa = data.find(0, 3);
  const EdgeCrossing* xb = data.find(2, 5);
  const EdgeCrossing* xl = data.find(4, 1);
  if (!xa || !xb || !xl) {
    std::ostringstream os;
    os << "configuration lacks the core crossing pattern:";
    if (!xa) os << " (1-2 x 4-5)";
    if (!xb) os << " (3-4 x 6-1)";
    if (!xl) os << " (5-6 x 2-3)";
    throw MissingCrossingError(os.str());
  }
  auto edge_len = [&](int e) { return (edge_end(e) - edge_start(e)).norm(); };
  auto pos_on = [&](const EdgeCrossing* c, int e) { return c->edge_a == e ? c->pos_a : c->pos_b; };

  const double len0 = edge_len(0), len3 = edge_len(3);
  data.a[1] = pos_on(xa, 0) * len0;          // a2 = |p1 -> X|
  data.a[0] = (1 - pos_on(xa, 0)) * len0;    // a1 = |X -> p2|
  data.a[3] = pos_on(xa, 3) * len3;          // a4 = |p4 -> X|
  data.a[2] = (1 - pos_on(xa, 3)) * len3;    // a3 = |X -> p5|

  const double len4 = edge_len(4), len1 = edge_len(1);
  data.l[1] = pos_on(xl, 4) * len4;          // l2 = |p5 -> X|
  data.l[0] = (1 - pos_on(xl, 4)) * len4;    // l1 = |X -> p6|
  data.l[3] = pos_on(xl, 1) * len1;          // l4 = |p2 -> X|
  data.l[2] = (1 - pos_on(xl, 1)) * len1;    // l3 = |X -> p3|

  const double len2 = edge_len(2), len5 = edge_len(5);
  data.b[2] = pos_on(xb, 2) * len2;          // b3 = |p3 -> X|
  data.b[3] = (1 - pos_on(xb, 2)) * len2;    // b4 = |X -> p4|
  data.b[1] = pos_on(xb, 5) * len5;          // b2 = |p6 -> X|
  data.b[0] = (1 - pos_on(xb, 5)) * len5;    // b1 = |X -> p1|

  return data;
}

namespace {

// The seven inequalities, in the over/under resolution drawn in the case
// figures: {under edge, over edge}, 0-based. The three marked core pairs are
// the minimal trefoil pattern and must exist in any applicable configuration.
struct Rule {
  int under, over;
  bool core;
};
constexpr Rule kRules[7] = {
    {0, 3, true},   // heights on 1-2 below 4-5
    {2, 0, false},  // 3-4 below 1-2
    {5, 3, false},  // 6-1 below 4-5
    {5, 2, true},   // 6-1 below 3-4
    {2, 4, false},  // 3-4 below 5-6
    {4, 1, true},   // 5-6 below 2-3
    {5, 1, false},  // 6-1 below 2-3
};

double height_at(const std::array<double, 6>& f, int edge, double pos) {
  return (1.0 - pos) * f[static_cast<size_t>(edge)] + pos * f[static_cast<size_t>((edge + 1) % 6)];
}

}  // namespace

bool check_crossing_rules(const HeightAssignment& f, const PlanarConfiguration& cfg,
                          bool mirrored) {
  const SegmentData data = segment_data(cfg);  // throws when the core pattern is absent
  for (const Rule& rule : kRules) {
    const EdgeCrossing* c = data.find(rule.under, rule.over);
    if (!c) continue;  // non-core crossing absent in this configuration
    const double h_under = height_at(f.f, rule.under, c->edge_a == rule.under ? c->pos_a : c->pos_b);
    const double h_over = height_at(f.f, rule.over, c->edge_a == rule.over ? c->pos_a : c->pos_b);
    const bool ok = mirrored ? (h_under > h_over) : (h_under < h_over);
    if (!ok) return false;
  }
  return true;
}

namespace {

enum Tag { Z, PE, ME, PP, MP, PD, MD };  // 0, +eps, -eps, +eps', -eps', +eps'', -eps''

struct CasePattern {
  int case_id;
  std::array<Tag, 6> tags;
};

// Base assignments of the three cases (0-based indices t1..t6 -> 0..5):
//   case 1: f = (-e', +e, 0, 0, +e'', 0),  e'' << e, e'
//   case 2: f = (0, 0, -e, 0, +e', -e''),  e << e''
//   case 3: f = (-e', 0, -e, -e, 0, -e'),  e < e'
constexpr CasePattern kBaseCases[3] = {
    {1, {MP, PE, Z, Z, PD, Z}},
    {2, {Z, Z, ME, Z, PP, MD}},
    {3, {MP, Z, ME, ME, Z, MP}},
};

constexpr int kSigmaR[6] = {5, 4, 3, 2, 1, 0};  // (16)(25)(34)
constexpr int kSigmaF[6] = {2, 1, 0, 5, 4, 3};  // (13)(46)

Tag negate_tag(Tag t) {
  switch (t) {
    case PE: return ME;
    case ME: return PE;
    case PP: return MP;
    case MP: return PP;
    case PD: return MD;
    case MD: return PD;
    default: return Z;
  }
}

struct Variant {
  int case_id;
  int sigma_variant;
  std::array<Tag, 6> tags;
  std::set<int> kernel() const {
    std::set<int> k;
    for (int i = 0; i < 6; ++i)
      if (tags[static_cast<size_t>(i)] == Z) k.insert(i);
    return k;
  }
};

std::vector<Variant> all_variants() {
  std::vector<Variant> out;
  for (const auto& base : kBaseCases) {
    for (int sv = 0; sv < 4; ++sv) {
      Variant v;
      v.case_id = base.case_id;
      v.sigma_variant = sv;
      for (int i = 0; i < 6; ++i) {
        int j = i;
        if (sv == 1) j = kSigmaR[static_cast<size_t>(i)];
        if (sv == 2) j = kSigmaF[static_cast<size_t>(i)];
        if (sv == 3) j = kSigmaF[static_cast<size_t>(kSigmaR[static_cast<size_t>(i)])];
        Tag tag = base.tags[static_cast<size_t>(j)];
        if (sv >= 2) tag = negate_tag(tag);  // f_f = -f o sigma_f
        v.tags[static_cast<size_t>(i)] = tag;
      }
      out.push_back(v);
    }
  }
  return out;
}

double tag_value(Tag t, double e, double ep, double edp) {
  switch (t) {
    case PE: return e;
    case ME: return -e;
    case PP: return ep;
    case MP: return -ep;
    case PD: return edp;
    case MD: return -edp;
    default: return 0.0;
  }
}

}  // namespace

HeightAssignment construct_case_heights(const PlanarConfiguration& cfg,
                                        const std::set<int>& one_sided,
                                        const CaseHeightOptions& opt) {
  for (const int i : one_sided)
    if (i < 0 || i > 5) throw std::invalid_argument("one_sided index out of range");

  const auto variants = all_variants();
  std::vector<const Variant*> applicable;
  for (const auto& v : variants) {
    const auto k = v.kernel();
    bool covered = true;
    for (const int i : one_sided)
      if (!k.count(i)) covered = false;
    if (covered) applicable.push_back(&v);
  }
  if (applicable.empty()) {
    std::ostringstream os;
    os << "one-sided set {";
    for (const int i : one_sided) os << ' ' << (i + 1);
    os << " } is outside the case analysis; kernels of the case orbit:";
    for (const auto& v : variants) {
      os << " {";
      for (const int i : v.kernel()) os << (i + 1);
      os << '}';
    }
    throw UncoveredCaseError(os.str());
  }

  // magnitude grids; the free eps'/eps ratio sweeps both directions, while
  // each "<<" relation starts at opt.ratio and doubles up to opt.max_ratio
  std::vector<double> free_ratio = {1.0, 1.25, 1.6, 2.0, 2.66, 4.0, 8.0, 20.0, 100.0};
  {
    std::vector<double> recip;
    for (const double r : free_ratio)
      if (r > 1.0) recip.push_back(1.0 / r);
    free_ratio.insert(free_ratio.end(), recip.begin(), recip.end());
  }
  std::vector<double> ll_ratio;
  for (double r = opt.ratio; r <= opt.max_ratio; r *= 2.0) ll_ratio.push_back(r);
  std::vector<double> near_ratio = {1.1, 1.2, 1.4, 1.6, 2.0, 3.0, 8.0, 100.0, 1e4};

  for (const bool mirrored : {false, true}) {
    for (const Variant* v : applicable) {
      auto attempt = [&](double e, double ep, double edp) -> std::optional<HeightAssignment> {
        HeightAssignment h;
        h.case_id = v->case_id;
        h.sigma_variant = v->sigma_variant;
        h.mirrored = mirrored;
        h.eps = e;
        h.eps_prime = ep;
        h.eps_dprime = edp;
        for (int i = 0; i < 6; ++i) {
          const double val = tag_value(v->tags[static_cast<size_t>(i)], e, ep, edp);
          h.f[static_cast<size_t>(i)] = mirrored ? -val : val;
        }
        if (check_crossing_rules(h, cfg, mirrored)) return h;
        return std::nullopt;
      };

      if (v->case_id == 1) {
        for (const double fr : free_ratio)
          for (const double rho : ll_ratio) {
            const double e = opt.scale, ep = opt.scale * fr;
            if (auto h = attempt(e, ep, std::min(e, ep) / rho)) return *h;
          }
      } else if (v->case_id == 2) {
        for (const double fr : free_ratio)
          for (const double rho : ll_ratio) {
            if (auto h = attempt(opt.scale / rho, opt.scale * fr, opt.scale)) return *h;
          }
      } else {
        for (const double r : near_ratio) {
          if (auto h = attempt(opt.scale / r, opt.scale, 0.0)) return *h;
        }
      }
    }
  }
  throw UncoveredCaseError(
      "no case assignment satisfies the crossing rules on this configuration");
}

bool is_bad_configuration(const PlanarConfiguration& cfg, double rel_tol) {
  const SegmentData s = segment_data(cfg);
  auto close = [&](double x, double y) {
    return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
  };
  const bool first = close(s.a_tilde(4) / s.a_tilde(2), s.l_tilde(1) / s.l_tilde(3));
  const bool second = close(s.a_tilde(3) / s.a_tilde(1), s.b_tilde(3) / s.b_tilde(2));
  return first && second;
}

std::array<Vec3, 6> epsilon_rotate(const PlanarConfiguration& cfg,
                                   const Vec3& line_point, const Vec3& line_dir,
                                   double eps) {
  const double scale = std::max(cfg.diameter(), 1.0);
  if (std::abs(cfg.plane.normal.dot(line_dir.normalized())) > 1e-9 ||
      std::abs(cfg.plane.signed_distance(line_point)) > 1e-6 * scale)
    throw std::invalid_argument("rotation axis must lie in the configuration plane");
  std::array<Vec3, 6> out;
  for (int i = 0; i < 6; ++i)
    out[static_cast<size_t>(i)] = rotate_about_line(cfg.points[static_cast<size_t>(i)], line_point, line_dir, eps);
  return out;
}

double config_theta(const PlanarConfiguration& cfg, const Plane& reference) {
  const double c = std::abs(cfg.plane.normal.dot(reference.normal));
  return std::acos(std::clamp(c, 0.0, 1.0));
}

namespace {

double wrap_pi(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

}  // namespace

int classify_planar_config(const PlanarConfiguration& cfg,
                           const curves::InversionPoint& I,
                           const ClassifyConfigOptions& opt) {
  const double scale = cfg.diameter();
  const auto& q = cfg.plane_coords;

  // (3): a consecutive colinear triple (the halfway rotation)
  for (int i = 0; i < 6; ++i) {
    const Vec2 a = q[static_cast<size_t>((i + 5) % 6)], b = q[static_cast<size_t>(i)], c = q[static_cast<size_t>((i + 1) % 6)];
    const Vec2 d = c - a;
    const double len = d.norm();
    if (len < 1e-12 * scale) continue;
    const double dist = std::abs(d.x() * (b.y() - a.y()) - d.y() * (b.x() - a.x())) / len;
    if (dist < opt.colinear_tol * scale) return 3;
  }

  // (2): the inversion point on the circumcircle of the configuration
  if (const auto fit = fit_circle(std::span<const Vec2>(q.data(), 6));
      fit && fit->max_abs_residual < 0.05 * scale) {
    Vec3 u, v;
    orthonormal_basis(cfg.plane.normal, u, v);
    const Vec3 center3 =
        cfg.plane.offset * cfg.plane.normal + fit->circle.center.x() * u + fit->circle.center.y() * v;
    double min_dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 256; ++k) {
      const double ang = 2 * kPi * k / 256;
      const Vec3 p = center3 + fit->circle.radius * (std::cos(ang) * u + std::sin(ang) * v);
      min_dist = std::min(min_dist, (curves::stereographic_unproject(p, I) - I.point).norm());
    }
    if (min_dist < opt.circumcircle_tol) return 2;
  }

  // (1)/(4)/(5): alternating triples on two nested circles
  const auto odd = circumcircle(q[0], q[2], q[4]);
  const auto even = circumcircle(q[1], q[3], q[5]);
  if (!odd || !even)
    throw UnclassifiableConfigError("alternating triples are colinear; no nested circles");
  const double r_out = std::max(odd->radius, even->radius);
  if ((odd->center - even->center).norm() > opt.concentric_tol * r_out)
    throw UnclassifiableConfigError("alternating-triple circles are not concentric");

  const Vec2 center = 0.5 * (odd->center + even->center);
  std::array<double, 6> ang{};
  for (int i = 0; i < 6; ++i) {
    const Vec2 d = q[static_cast<size_t>(i)] - center;
    if (d.norm() < 1e-9 * scale)
      throw UnclassifiableConfigError("configuration point at the common center");
    ang[static_cast<size_t>(i)] = std::atan2(d.y(), d.x());
  }

  // winding of the traversal about the common center: +2 keeps the
  // convention of types (1)/(4), -2 is the flipped family (5)
  double winding = 0.0;
  for (int i = 0; i < 6; ++i) winding += wrap_pi(ang[static_cast<size_t>((i + 1) % 6)] - ang[static_cast<size_t>(i)]);
  winding /= 2 * kPi;
  if (std::abs(std::abs(winding) - 2.0) > 0.2)
    throw UnclassifiableConfigError("traversal winding is " + std::to_string(winding) +
                                    ", expected +-2");
  const bool flipped = winding < 0;

  std::array<double, 3> delta{};
  for (int i = 0; i < 3; ++i) delta[static_cast<size_t>(i)] = wrap_pi(ang[static_cast<size_t>(i + 3)] - ang[static_cast<size_t>(i)]);
  for (int i = 0; i < 3; ++i)
    if (std::abs(wrap_pi(delta[static_cast<size_t>(i)] - delta[0])) > kPi / 4)
      throw UnclassifiableConfigError("pair phases disagree");
  const double phase = std::abs(delta[0] + delta[1] + delta[2]) / 3.0;

  if (flipped) return 5;
  return phase <= opt.phase_split_deg * kPi / 180.0 ? 1 : 4;
}

}  // namespace hexknot::config_geometry
