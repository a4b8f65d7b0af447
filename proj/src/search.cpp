#include "hexknot/search.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

#include "hexknot/errors.hpp"
#include "hexknot/rng.hpp"

namespace hexknot::search {

using config_geometry::PrismConfiguration;
using config_geometry::PrismResidual;
using config_geometry::SixTuple;
using invariants::KnotClass;

SearchTarget target_from_string(const std::string& s) {
  if (s == "any") return SearchTarget::AnyTrefoil;
  if (s == "left") return SearchTarget::LeftOnly;
  if (s == "right") return SearchTarget::RightOnly;
  if (s == "both") return SearchTarget::Both;
  throw std::invalid_argument("unknown target '" + s + "' (any|left|right|both)");
}

std::string to_string(SearchTarget t) {
  switch (t) {
    case SearchTarget::AnyTrefoil: return "any";
    case SearchTarget::LeftOnly: return "left";
    case SearchTarget::RightOnly: return "right";
    default: return "both";
  }
}

namespace {

constexpr double kMinWindowMargin = 1e-9;

bool ordered(const std::array<double, 6>& t, double min_gap) {
  for (int i = 0; i < 5; ++i)
    if (!(t[static_cast<size_t>(i + 1)] - t[static_cast<size_t>(i)] > min_gap)) return false;
  return t[5] - t[0] < 1.0 - min_gap;
}

double min_gap_of(const std::array<double, 6>& t) {
  double g = t[0] + 1.0 - t[5];
  for (int i = 0; i < 5; ++i) g = std::min(g, t[static_cast<size_t>(i + 1)] - t[static_cast<size_t>(i)]);
  return g;
}

Eigen::MatrixXd points_at(const curves::PeriodicCurve& curve,
                          const std::array<double, 6>& t) {
  const int d = curve.dim();
  Eigen::MatrixXd pts(d, 6);
  for (int i = 0; i < 6; ++i) {
    const Vec4 p = curve.eval4(t[static_cast<size_t>(i)]);
    for (int r = 0; r < d; ++r) pts(r, i) = p(r);
  }
  return pts;
}

struct ResidualEvaluator {
  const curves::PeriodicCurve& curve;
  Eigen::VectorXd align;  // apex sign reference; empty until first call

  Eigen::VectorXd smooth(const std::array<double, 6>& t, bool update_align) {
    const PrismResidual r = config_geometry::prism_residual_points(
        points_at(curve, t), align.size() ? &align : nullptr);
    if (update_align || align.size() == 0) align = r.apex_homogeneous;
    return r.smooth;
  }

  PrismResidual full(const std::array<double, 6>& t) {
    return config_geometry::prism_residual_points(points_at(curve, t),
                                                  align.size() ? &align : nullptr);
  }

  Eigen::MatrixXd jacobian(const std::array<double, 6>& t, double h = 1e-7) {
    const int rows = static_cast<int>(smooth(t, false).size());
    Eigen::MatrixXd J(rows, 6);
    for (int i = 0; i < 6; ++i) {
      std::array<double, 6> tp = t, tm = t;
      tp[static_cast<size_t>(i)] += h;
      tm[static_cast<size_t>(i)] -= h;
      J.col(i) = (smooth(tp, false) - smooth(tm, false)) / (2 * h);
    }
    return J;
  }
};

PrismConfiguration make_configuration(const curves::PeriodicCurve& curve,
                                      const std::array<double, 6>& t_raw) {
  PrismConfiguration out;
  const SixTuple canon = SixTuple::canonicalize(t_raw);
  // class id: which index rotation canonicalization applied
  int shift = 0;
  {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 6; ++k) {
      const double d = std::abs(canon.t[0] - (t_raw[static_cast<size_t>(k)] - std::floor(t_raw[static_cast<size_t>(k)])));
      if (d < best) {
        best = d;
        shift = k;
      }
    }
  }
  out.tuple = canon;
  out.cyclic_class_id = shift;
  out.points = config_geometry::tuple_points(curve, canon);
  const PrismResidual res = config_geometry::prism_residual_points(out.points);
  out.apex_homogeneous = res.apex_homogeneous;
  out.residual_norm = res.norm;

  const int d = curve.dim();
  if (d == 3) {
    std::array<Vec3, 6> pts;
    for (int i = 0; i < 6; ++i) pts[static_cast<size_t>(i)] = out.points.col(i);
    double diam = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) diam = std::max(diam, (pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]).norm());
    const PlaneFit pf = fit_plane(std::span<const Vec3>(pts.data(), 6));
    out.planar = diam > 0 && pf.max_abs_distance / diam < 1e-8;
    const auto sf = fit_sphere(std::span<const Vec3>(pts.data(), 6));
    out.cospherical = sf && diam > 0 && sf->max_abs_residual / diam < 1e-8;
  } else {
    // points of an S3 curve: cospherical = contained in a hyperplane of R^4,
    // i.e. on a 2-sphere of S^3; planarity needs an inversion point and is
    // reported along traces instead
    Eigen::Vector4d centroid = Eigen::Vector4d::Zero();
    for (int i = 0; i < 6; ++i) centroid += out.points.col(i);
    centroid /= 6.0;
    Eigen::MatrixXd centered(4, 6);
    for (int i = 0; i < 6; ++i) centered.col(i) = out.points.col(i) - centroid;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
    const double diam = 2.0;  // points on the unit sphere
    out.cospherical = svd.singularValues()(3) / diam < 1e-8;
    out.planar = false;
  }
  return out;
}

}  // namespace

PrismConfiguration solve_prism(const curves::PeriodicCurve& curve, const SixTuple& seed,
                               const SolveOptions& opt) {
  seed.validate();
  ResidualEvaluator eval{curve, {}};

  std::array<double, 6> t = seed.t;
  Eigen::VectorXd r = eval.smooth(t, true);
  double cost = r.squaredNorm();
  double lambda = opt.lambda0;

  auto public_norm = [&](const std::array<double, 6>& x) { return eval.full(x).norm; };

  if (public_norm(t) < opt.tol) return make_configuration(curve, t);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const Eigen::MatrixXd J = eval.jacobian(t);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;

    bool accepted = false;
    for (int inner = 0; inner < 40 && !accepted; ++inner) {
      Eigen::MatrixXd damped = JtJ;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      std::array<double, 6> t_new = t;
      for (int i = 0; i < 6; ++i) t_new[static_cast<size_t>(i)] += delta(i);

      if (!ordered(t_new, kMinWindowMargin)) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd r_new = eval.smooth(t_new, false);
      if (r_new.squaredNorm() < cost) {
        t = t_new;
        r = eval.smooth(t, true);
        cost = r.squaredNorm();
        lambda = std::max(lambda / 10.0, 1e-14);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
      if (lambda > 1e12) break;
    }

    if (min_gap_of(t) < opt.min_gap)
      throw OrderingCollapseError("parameters merged: min gap " +
                                  std::to_string(min_gap_of(t)));
    if (public_norm(t) < opt.tol) return make_configuration(curve, t);
    if (!accepted && lambda > 1e12)
      throw NoConvergenceError("LM stalled at residual " + std::to_string(public_norm(t)));
  }
  throw NoConvergenceError("no convergence after " + std::to_string(opt.max_iterations) +
                           " iterations; residual " + std::to_string(public_norm(t)));
}

namespace {

KnotClass classify_tuple(const curves::PeriodicCurve& curve,
                         const std::array<double, 6>& t,
                         const std::optional<curves::InversionPoint>& I,
                         std::uint64_t seed, int directions, bool* generic) {
  *generic = true;
  try {
    std::vector<Vec3> verts(6);
    for (int i = 0; i < 6; ++i) {
      if (curve.ambient() == curves::Ambient::S3)
        verts[static_cast<size_t>(i)] = curves::stereographic_project(curve.eval4(t[static_cast<size_t>(i)]), *I);
      else
        verts[static_cast<size_t>(i)] = curve.eval3(t[static_cast<size_t>(i)]);
    }
    diagram::ClosedPolygon poly(std::move(verts));
    return invariants::classify_hexagon(poly, {directions, seed});
  } catch (const Error&) {
    *generic = false;
    return KnotClass::Other;
  } catch (const std::invalid_argument&) {
    *generic = false;
    return KnotClass::Other;
  }
}

}  // namespace

TraceResult trace_prism_manifold(const curves::PeriodicCurve& curve,
                                 const PrismConfiguration& start,
                                 const TraceOptions& opt,
                                 const std::optional<curves::InversionPoint>& I) {
  if (start.residual_norm > 10 * opt.tol)
    throw std::invalid_argument("trace start residual " +
                                std::to_string(start.residual_norm) + " above tolerance");

  std::optional<curves::InversionPoint> inv = I;
  if (curve.ambient() == curves::Ambient::S3 && !inv)
    inv = curves::default_inversion_point(curve);

  ResidualEvaluator eval{curve, {}};
  TraceResult result;

  std::array<double, 6> t = start.tuple.t;
  eval.smooth(t, true);

  auto record = [&](const std::array<double, 6>& x, double step) {
    TracePoint p;
    p.tuple = SixTuple::canonicalize(x);
    p.residual = eval.full(x).norm;
    p.step = step;
    p.knot_class = classify_tuple(curve, x, inv, mix_seed(opt.seed, static_cast<std::uint64_t>(result.points.size())),
                                  5, &p.generic);
    // flags on the R3 shadow (projected for S3 curves)
    std::array<Vec3, 6> pts;
    bool have = true;
    for (int i = 0; i < 6; ++i) {
      try {
        pts[static_cast<size_t>(i)] = curve.ambient() == curves::Ambient::S3
                      ? curves::stereographic_project(curve.eval4(x[static_cast<size_t>(i)]), *inv)
                      : curve.eval3(x[static_cast<size_t>(i)]);
      } catch (const PointAtInfinityError&) {
        have = false;
      }
    }
    if (have) {
      double diam = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) diam = std::max(diam, (pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]).norm());
      const PlaneFit pf = fit_plane(std::span<const Vec3>(pts.data(), 6));
      p.planar = diam > 0 && pf.max_abs_distance / diam < 1e-8;
      const auto sf = fit_sphere(std::span<const Vec3>(pts.data(), 6));
      p.cospherical = sf && diam > 0 && sf->max_abs_residual / diam < 1e-8;
    }
    result.points.push_back(p);
  };

  record(t, 0.0);

  double step = opt.step;
  Eigen::VectorXd prev_tangent;

  for (int k = 0; k < opt.max_steps; ++k) {
    // tangent from the Jacobian null space
    const Eigen::MatrixXd J = eval.jacobian(t);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double thresh = std::max(1e-7, 1e-5 * s(0));
    int null_dim = 0;
    for (int i = 0; i < 6; ++i)
      if (i >= s.size() || s(i) < thresh) ++null_dim;
    if (null_dim != 1)
      throw TangentDegenerateError("Jacobian null space has dimension " +
                                       std::to_string(null_dim) + " (expected 1)",
                                   null_dim);
    Eigen::VectorXd tangent = svd.matrixV().col(5);
    if (prev_tangent.size() && prev_tangent.dot(tangent) < 0) tangent = -tangent;
    if (!prev_tangent.size() ) prev_tangent = tangent;

    bool stepped = false;
    while (!stepped) {
      std::array<double, 6> t_pred = t;
      for (int i = 0; i < 6; ++i) t_pred[static_cast<size_t>(i)] += step * tangent(i);

      // corrector: LM on [smooth; tangent . (x - t_pred)] (pseudo-arclength)
      std::array<double, 6> x = t_pred;
      bool ok = ordered(x, kMinWindowMargin);
      int used_iters = 0;
      if (ok) {
        double lambda = 1e-6;
        for (used_iters = 0; used_iters < 30; ++used_iters) {
          Eigen::VectorXd r = eval.smooth(x, false);
          const int rows = static_cast<int>(r.size());
          Eigen::VectorXd raug(rows + 1);
          raug.head(rows) = r;
          double cdot = 0;
          for (int i = 0; i < 6; ++i) cdot += tangent(i) * (x[static_cast<size_t>(i)] - t_pred[static_cast<size_t>(i)]);
          raug(rows) = cdot;
          if (eval.full(x).norm < opt.tol && std::abs(cdot) < step) break;

          Eigen::MatrixXd Jx = eval.jacobian(x);
          Eigen::MatrixXd Jaug(rows + 1, 6);
          Jaug.topRows(rows) = Jx;
          for (int i = 0; i < 6; ++i) Jaug(rows, i) = tangent(i);
          Eigen::MatrixXd JtJ = Jaug.transpose() * Jaug;
          JtJ.diagonal().array() += lambda;
          const Eigen::VectorXd delta = JtJ.ldlt().solve(-Jaug.transpose() * raug);
          std::array<double, 6> x_new = x;
          for (int i = 0; i < 6; ++i) x_new[static_cast<size_t>(i)] += delta(i);
          if (!ordered(x_new, kMinWindowMargin)) {
            ok = false;
            break;
          }
          x = x_new;
        }
        ok = ok && eval.full(x).norm < opt.tol;
      }

      if (ok) {
        if (min_gap_of(x) < 1e-6) {
          result.boundary = true;
          record(x, step);
          return result;
        }
        t = x;
        eval.smooth(t, true);
        prev_tangent = tangent;
        record(t, step);
        if (used_iters <= 3) step = std::min(step * 1.5, opt.max_step);
        stepped = true;

        if (result.points.size() > 10) {
          const double d = result.points.back().tuple.cyclic_distance(start.tuple);
          if (d < step / 2) {
            result.closed = true;
            return result;
          }
        }
      } else {
        step *= 0.5;
        if (step < opt.min_step) return result;  // cannot continue
      }
    }
  }
  return result;
}

std::vector<PlanarEvent> scan_planar_events(const TraceResult& trace,
                                            const curves::PeriodicCurve& curve,
                                            const std::optional<curves::InversionPoint>& I,
                                            double coplanarity_tol) {
  std::optional<curves::InversionPoint> inv = I;
  if (curve.ambient() == curves::Ambient::S3 && !inv)
    inv = curves::default_inversion_point(curve);

  std::vector<PlanarEvent> events;
  std::optional<Plane> first_plane;
  for (int idx = 0; idx < static_cast<int>(trace.points.size()); ++idx) {
    const auto& tp = trace.points[static_cast<size_t>(idx)];
    std::array<Vec3, 6> pts;
    try {
      for (int i = 0; i < 6; ++i)
        pts[static_cast<size_t>(i)] = curve.ambient() == curves::Ambient::S3
                      ? curves::stereographic_project(curve.eval4(tp.tuple.t[static_cast<size_t>(i)]), *inv)
                      : curve.eval3(tp.tuple.t[static_cast<size_t>(i)]);
    } catch (const PointAtInfinityError&) {
      continue;
    }

    config_geometry::PlanarConfiguration cfg;
    try {
      cfg = config_geometry::PlanarConfiguration::from_points(pts, coplanarity_tol);
    } catch (const std::invalid_argument&) {
      continue;  // not coplanar at this tolerance
    }

    PlanarEvent ev;
    ev.index = idx;
    try {
      ev.config_type = config_geometry::classify_planar_config(cfg, *inv);
      cfg.config_type = ev.config_type;
    } catch (const UnclassifiableConfigError&) {
      ev.config_type = 0;
    }
    if (ev.config_type == 1 || ev.config_type == 4 || ev.config_type == 5) {
      try {
        ev.bad = config_geometry::is_bad_configuration(cfg);
      } catch (const MissingCrossingError&) {
        ev.bad = std::nullopt;
      }
    }
    if (!first_plane) first_plane = cfg.plane;
    ev.theta = config_geometry::config_theta(cfg, *first_plane);
    ev.cfg = cfg;
    events.push_back(std::move(ev));
  }
  return events;
}

namespace {

struct SampleOutcome {
  bool embedded = false;
  bool candidate = false;
  std::optional<TrefoilFind> find;
};

SampleOutcome process_sample(const curves::PeriodicCurve& curve,
                             const std::optional<curves::InversionPoint>& I,
                             std::uint64_t seed, long index,
                             const std::array<double, 6>* forced_tuple = nullptr) {
  SampleOutcome out;
  Rng rng(mix_seed(seed, static_cast<std::uint64_t>(index)));
  std::array<double, 6> t;
  if (forced_tuple) {
    t = *forced_tuple;
  } else {
    for (auto& x : t) x = rng.uniform();
    std::sort(t.begin(), t.end());
  }
  if (min_gap_of(t) < 1e-9) return out;

  std::vector<Vec3> verts(6);
  try {
    for (int i = 0; i < 6; ++i)
      verts[static_cast<size_t>(i)] = curve.ambient() == curves::Ambient::S3
                    ? curves::stereographic_project(curve.eval4(t[static_cast<size_t>(i)]), *I)
                    : curve.eval3(t[static_cast<size_t>(i)]);
  } catch (const PointAtInfinityError&) {
    return out;
  }

  std::unique_ptr<diagram::ClosedPolygon> poly;
  try {
    poly = std::make_unique<diagram::ClosedPolygon>(std::move(verts));
  } catch (const PolygonError&) {
    return out;
  }
  out.embedded = true;

  // cheap prefilter: v2 from one generic projection (v2 = 1 iff trefoil)
  try {
    const Vec3 dir = diagram::random_generic_direction(
        *poly, mix_seed(seed ^ 0x5eedf11e7ULL, static_cast<std::uint64_t>(index)));
    const auto code = gauss_code(diagram::project_diagram(*poly, dir));
    if (invariants::v2(code) != 1) return out;
  } catch (const Error&) {
    return out;
  }
  out.candidate = true;

  try {
    const KnotClass cls = invariants::classify_hexagon(
        *poly, {5, mix_seed(seed ^ 0xc1a55ULL, static_cast<std::uint64_t>(index))});
    if (cls != KnotClass::TrefoilLeft && cls != KnotClass::TrefoilRight) return out;
    // independent re-verification with fresh directions
    const KnotClass recheck = invariants::classify_hexagon(
        *poly, {10, mix_seed(seed ^ 0x7e59f7ULL, static_cast<std::uint64_t>(index))});
    if (recheck != cls) return out;
    TrefoilFind find;
    SixTuple tuple;
    tuple.t = t;
    tuple.validate();
    find.tuple = tuple;
    find.knot_class = cls;
    find.sample_index = index;
    find.verification_directions = 10;
    out.find = find;
  } catch (const Error&) {
    return out;
  }
  return out;
}

bool target_met(const SearchBudget& budget, long left, long right) {
  switch (budget.target) {
    case SearchTarget::AnyTrefoil: return left + right >= 1;
    case SearchTarget::LeftOnly: return left >= 1;
    case SearchTarget::RightOnly: return right >= 1;
    default: return left >= 1 && right >= 1;
  }
}

}  // namespace

SearchResult find_inscribed_trefoils(const curves::PeriodicCurve& curve,
                                     const SearchBudget& budget,
                                     const std::optional<curves::InversionPoint>& I,
                                     int threads) {
  if (budget.max_samples < 1) throw std::invalid_argument("budget must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  std::optional<curves::InversionPoint> inv = I;
  if (curve.ambient() == curves::Ambient::S3 && !inv)
    inv = curves::default_inversion_point(curve, budget.rng_seed);

  int workers = threads;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers > 8) workers = 8;
  }

  SearchResult result;
  // fixed block size: the stopping point is independent of the worker count
  constexpr long kBlock = 8192;

  for (long block_start = 0;
       block_start < budget.max_samples &&
       !(result.stats.target_met = target_met(budget, result.stats.found_left,
                                              result.stats.found_right));
       block_start += kBlock) {
    const long block_end = std::min(budget.max_samples, block_start + kBlock);
    const long count = block_end - block_start;
    std::vector<SampleOutcome> outcomes(static_cast<size_t>(count));

    auto work = [&](int w) {
      for (long i = w; i < count; i += workers)
        outcomes[static_cast<size_t>(i)] =
            process_sample(curve, inv, budget.rng_seed, block_start + i);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    for (long i = 0; i < count; ++i) {
      auto& o = outcomes[static_cast<size_t>(i)];
      ++result.stats.samples;
      if (o.embedded) ++result.stats.embedded;
      if (o.candidate) ++result.stats.candidates;
      if (o.find) {
        if (o.find->knot_class == KnotClass::TrefoilLeft)
          ++result.stats.found_left;
        else
          ++result.stats.found_right;
        result.finds.push_back(*o.find);
      }
    }

    // optional local refinement around the block's finds
    if (budget.refinement_steps > 0 && !result.finds.empty()) {
      long extra_index = budget.max_samples + block_start;
      const size_t snapshot = result.finds.size();
      for (size_t fi = 0; fi < snapshot; ++fi) {
        for (int rstep = 0; rstep < budget.refinement_steps &&
                            result.stats.samples < budget.max_samples;
             ++rstep) {
          Rng rng(mix_seed(budget.rng_seed ^ 0x3e71ULL, static_cast<std::uint64_t>(extra_index + rstep)));
          std::array<double, 6> t = result.finds[fi].tuple.t;
          for (auto& x : t) x += 0.01 * rng.normal();
          std::sort(t.begin(), t.end());
          for (auto& x : t) x -= std::floor(x);
          std::sort(t.begin(), t.end());
          auto o = process_sample(curve, inv, budget.rng_seed, extra_index + rstep, &t);
          ++result.stats.samples;
          if (o.embedded) ++result.stats.embedded;
          if (o.candidate) ++result.stats.candidates;
          if (o.find) {
            if (o.find->knot_class == KnotClass::TrefoilLeft)
              ++result.stats.found_left;
            else
              ++result.stats.found_right;
            result.finds.push_back(*o.find);
          }
        }
        extra_index += budget.refinement_steps;
      }
    }
  }

  result.stats.target_met =
      target_met(budget, result.stats.found_left, result.stats.found_right);
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace hexknot::search
