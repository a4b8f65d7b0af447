#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hexknot/curves.hpp"
#include "hexknot/diagram.hpp"
#include "hexknot/errors.hpp"
#include "support/test_helpers.hpp"

using namespace hexknot;
using namespace hexknot::diagram;

namespace {

ClosedPolygon planar_hexagon() {
  std::vector<Vec3> v;
  for (int k = 0; k < 6; ++k) {
    const double a = 2 * M_PI * k / 6;
    v.emplace_back(std::cos(a), std::sin(a), 0.0);
  }
  return ClosedPolygon(std::move(v));
}

// the exact t=k/6 hexagon is singular; use the slightly twisted prism hexagon
ClosedPolygon paper_hexagon() { return testing::paper_prism_hexagon(); }

}  // namespace

TEST_CASE("polygon construction rejects degeneracies") {
  CHECK_THROWS_AS(ClosedPolygon({Vec3(0, 0, 0), Vec3(1, 0, 0)}), PolygonError);
  // repeated vertex
  CHECK_THROWS_AS(ClosedPolygon({Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 1, 0)}),
                  PolygonError);
  // self-intersecting quad (bowtie in the plane)
  CHECK_THROWS_AS(ClosedPolygon({Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(1, 0, 0),
                                 Vec3(0, 1, 0)}),
                  PolygonError);
}

TEST_CASE("planar convex hexagon projects with no crossings") {
  const auto hex = planar_hexagon();
  const auto d = project_diagram(hex, Vec3(0, 0, 1));
  CHECK(d.crossings.empty());
  CHECK(gauss_code(d).entries.empty());
  CHECK(writhe(gauss_code(d)) == 0);
}

TEST_CASE("in-plane views of a coplanar hexagon are rejected, perpendicular accepted") {
  const auto hex = planar_hexagon();
  CHECK_THROWS_AS(project_diagram(hex, Vec3(1, 0, 0)), NonGenericDirectionError);
  CHECK_THROWS_AS(project_diagram(hex, Vec3(0, 1, 0)), NonGenericDirectionError);
  CHECK_NOTHROW(project_diagram(hex, Vec3(0, 0, 1)));
}

TEST_CASE("paper-trefoil hexagon: modal crossing count is 3 with uniform sign") {
  // brute force over random directions; 3-crossing diagrams must carry one sign
  const auto hex = paper_hexagon();
  std::map<int, int> histogram;
  int uniform_sign_diagrams = 0, three_crossing_diagrams = 0;
  for (int k = 0; k < 10000; ++k) {
    try {
      const Vec3 dir = random_generic_direction(hex, static_cast<std::uint64_t>(k) * 977 + 13);
      const auto d = project_diagram(hex, dir);
      histogram[static_cast<int>(d.crossings.size())] += 1;
      if (d.crossings.size() == 3) {
        ++three_crossing_diagrams;
        const int s = d.crossings[0].sign;
        bool uniform = true;
        for (const auto& c : d.crossings) uniform = uniform && c.sign == s;
        if (uniform) ++uniform_sign_diagrams;
      }
    } catch (const GenericityExhaustedError&) {
    }
  }
  int modal = -1, modal_count = -1;
  for (const auto& [count, times] : histogram)
    if (times > modal_count) {
      modal = count;
      modal_count = times;
    }
  CHECK(modal == 3);
  CHECK(three_crossing_diagrams == uniform_sign_diagrams);
}

TEST_CASE("mirroring negates crossing signs and the writhe") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto poly = testing::random_hexagon(rng);
    const auto mirrored = poly.mirrored();
    Vec3 dir;
    try {
      dir = random_generic_direction(poly, 100 + static_cast<std::uint64_t>(trial));
    } catch (const GenericityExhaustedError&) {
      continue;
    }
    Vec3 mdir = dir;
    mdir.x() = -mdir.x();
    KnotDiagram d1, d2;
    try {
      d1 = project_diagram(poly, dir);
      d2 = project_diagram(mirrored, mdir);
    } catch (const NonGenericDirectionError&) {
      continue;
    }
    REQUIRE(d1.crossings.size() == d2.crossings.size());
    CHECK(writhe(gauss_code(d1)) == -writhe(gauss_code(d2)));
    // crossings correspond pairwise with negated signs
    std::multiset<int> s1, s2;
    for (const auto& c : d1.crossings) s1.insert(c.sign);
    for (const auto& c : d2.crossings) s2.insert(-c.sign);
    CHECK(s1 == s2);
  }
}

TEST_CASE("hexagon diagrams have at most 9 crossings") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto poly = testing::random_hexagon(rng);
    try {
      const auto d = project_diagram(poly, random_generic_direction(poly, static_cast<std::uint64_t>(trial)));
      CHECK(d.crossings.size() <= 9);
    } catch (const GenericityExhaustedError&) {
    }
  }
}

TEST_CASE("gauss code validity and determinism") {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto poly = testing::random_hexagon(rng);
    Vec3 dir;
    try {
      dir = random_generic_direction(poly, static_cast<std::uint64_t>(trial) + 7);
    } catch (const GenericityExhaustedError&) {
      continue;
    }
    const auto code = gauss_code(project_diagram(poly, dir));
    CHECK(code.valid());

    // determinism: same seed gives the same direction, bit for bit
    const Vec3 again = random_generic_direction(poly, static_cast<std::uint64_t>(trial) + 7);
    CHECK(again == dir);
  }
}

TEST_CASE("trefoil gauss code alternates over/under") {
  // all realizable 3-crossing knot codes with 3 distinct crossings alternate;
  // check the extracted code by brute force over its rotations
  const auto hex = paper_hexagon();
  int checked = 0;
  for (int k = 0; k < 200 && checked < 20; ++k) {
    try {
      const auto d = project_diagram(hex, random_generic_direction(hex, static_cast<std::uint64_t>(k)));
      if (d.crossings.size() != 3) continue;
      const auto code = gauss_code(d);
      REQUIRE(code.entries.size() == 6);
      bool alternating = true;
      for (int i = 0; i < 6; ++i)
        if (code.entries[static_cast<size_t>(i)].over == code.entries[static_cast<size_t>((i + 1) % 6)].over)
          alternating = false;
      CHECK(alternating);
      ++checked;
    } catch (const GenericityExhaustedError&) {
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("genericity exhausted when every crossing is rejected") {
  // a trefoil hexagon has crossings from every direction; an impossible
  // depth-gap tolerance therefore rejects all 64 draws
  const auto hex = paper_hexagon();
  DiagramTolerances impossible;
  impossible.min_depth_gap = 1e9;
  CHECK_THROWS_AS(random_generic_direction(hex, 1, impossible), GenericityExhaustedError);
}
