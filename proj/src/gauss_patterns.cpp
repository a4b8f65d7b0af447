#include "gauss_patterns.hpp"

#include <array>
#include <sstream>
#include <vector>

namespace hexknot::invariants::detail {

namespace {

struct CrossingVisits {
  int first = -1, second = -1;  // positions in the code
  int sign = 0;
};

std::vector<CrossingVisits> index_visits(const diagram::GaussCode& code) {
  std::vector<CrossingVisits> v(static_cast<size_t>(code.crossing_count));
  for (int pos = 0; pos < static_cast<int>(code.entries.size()); ++pos) {
    const auto& e = code.entries[static_cast<size_t>(pos)];
    auto& cv = v[static_cast<size_t>(e.crossing_id)];
    if (cv.first < 0)
      cv.first = pos;
    else
      cv.second = pos;
    cv.sign = e.sign;
  }
  return v;
}

// Merge the visit positions of the chosen crossings in traversal order and
// pack (role-by-first-appearance, over) per visit.
template <int K>
std::uint32_t shape_of(const diagram::GaussCode& code,
                       const std::array<int, K>& chosen,
                       const std::vector<CrossingVisits>& visits) {
  std::array<std::pair<int, int>, 2 * K> pos;  // (position, crossing index in `chosen`)
  for (int k = 0; k < K; ++k) {
    pos[static_cast<size_t>(2 * k)] = {visits[static_cast<size_t>(chosen[static_cast<size_t>(k)])].first, k};
    pos[static_cast<size_t>(2 * k + 1)] = {visits[static_cast<size_t>(chosen[static_cast<size_t>(k)])].second, k};
  }
  std::sort(pos.begin(), pos.end());
  std::array<int, K> role;
  role.fill(-1);
  int next_role = 0;
  std::uint32_t shape = 0;
  for (const auto& [p, k] : pos) {
    if (role[static_cast<size_t>(k)] < 0) role[static_cast<size_t>(k)] = next_role++;
    const bool over = code.entries[static_cast<size_t>(p)].over;
    shape = (shape << 3) | pack_symbol(role[static_cast<size_t>(k)], over);
  }
  return shape;
}

}  // namespace

std::map<std::uint32_t, long long> pair_shape_counts(const diagram::GaussCode& code) {
  std::map<std::uint32_t, long long> out;
  const auto visits = index_visits(code);
  const int c = code.crossing_count;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const auto shape = shape_of<2>(code, {i, j}, visits);
      out[shape] += static_cast<long long>(visits[static_cast<size_t>(i)].sign) * visits[static_cast<size_t>(j)].sign;
    }
  return out;
}

std::map<std::uint32_t, long long> triple_shape_counts(const diagram::GaussCode& code) {
  std::map<std::uint32_t, long long> out;
  const auto visits = index_visits(code);
  const int c = code.crossing_count;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j)
      for (int k = j + 1; k < c; ++k) {
        const auto shape = shape_of<3>(code, {i, j, k}, visits);
        out[shape] += static_cast<long long>(visits[static_cast<size_t>(i)].sign) *
                      visits[static_cast<size_t>(j)].sign * visits[static_cast<size_t>(k)].sign;
      }
  return out;
}

long long evaluate_shape_formula(const diagram::GaussCode& code,
                                 std::span<const WeightedShape> pair_shapes,
                                 std::span<const WeightedShape> triple_shapes) {
  long long acc = 0;
  if (!pair_shapes.empty()) {
    const auto counts = pair_shape_counts(code);
    for (const auto& ws : pair_shapes) {
      auto it = counts.find(ws.shape);
      if (it != counts.end()) acc += static_cast<long long>(ws.weight) * it->second;
    }
  }
  if (!triple_shapes.empty()) {
    const auto counts = triple_shape_counts(code);
    for (const auto& ws : triple_shapes) {
      auto it = counts.find(ws.shape);
      if (it != counts.end()) acc += static_cast<long long>(ws.weight) * it->second;
    }
  }
  return acc;
}

std::string shape_to_string(std::uint32_t shape, int chords) {
  const int symbols = 2 * chords;
  std::ostringstream os;
  for (int s = symbols - 1; s >= 0; --s) {
    const std::uint32_t sym = (shape >> (3 * s)) & 0x7u;
    os << (((sym & 1u) != 0) ? 'O' : 'U') << ((sym >> 1) + 1);
    if (s) os << ' ';
  }
  return os.str();
}

}  // namespace hexknot::invariants::detail
