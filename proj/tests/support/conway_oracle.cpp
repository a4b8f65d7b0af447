#include "support/conway_oracle.hpp"

#include <stdexcept>

namespace hexknot::oracle {

OracleDiagram OracleDiagram::from_gauss_code(const diagram::GaussCode& code) {
  if (!code.valid()) throw std::invalid_argument("oracle: invalid Gauss code");
  OracleDiagram d;
  d.sign.assign(static_cast<size_t>(code.crossing_count), 0);
  d.components.emplace_back();
  for (const auto& e : code.entries) {
    d.components[0].emplace_back(e.crossing_id, e.over);
    d.sign[static_cast<size_t>(e.crossing_id)] = e.sign;
  }
  return d;
}

OracleDiagram OracleDiagram::torus_2n(int n) {
  OracleDiagram d;
  d.sign.assign(static_cast<size_t>(n), +1);
  std::vector<std::pair<int, bool>> comp;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i) comp.emplace_back(i, (i + pass) % 2 == 0);
  d.components.push_back(std::move(comp));
  return d;
}

namespace {

struct VisitRef {
  int comp;
  int pos;
};

// first visit of each crossing in global traversal order; -1 when absent
std::vector<std::pair<VisitRef, VisitRef>> locate_visits(const OracleDiagram& d) {
  std::vector<std::pair<VisitRef, VisitRef>> where(
      d.sign.size(), {{-1, -1}, {-1, -1}});
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c) {
    const auto& comp = d.components[static_cast<size_t>(c)];
    for (int p = 0; p < static_cast<int>(comp.size()); ++p) {
      auto& slot = where[static_cast<size_t>(comp[static_cast<size_t>(p)].first)];
      if (slot.first.comp < 0)
        slot.first = {c, p};
      else
        slot.second = {c, p};
    }
  }
  return where;
}

OracleDiagram switch_crossing(const OracleDiagram& d, int crossing) {
  OracleDiagram out = d;
  out.sign[static_cast<size_t>(crossing)] = -out.sign[static_cast<size_t>(crossing)];
  for (auto& comp : out.components)
    for (auto& v : comp)
      if (v.first == crossing) v.second = !v.second;
  return out;
}

OracleDiagram smooth_crossing(const OracleDiagram& d, int crossing) {
  const auto where = locate_visits(d);
  const VisitRef a = where[static_cast<size_t>(crossing)].first;
  const VisitRef b = where[static_cast<size_t>(crossing)].second;
  OracleDiagram out;
  out.sign = d.sign;
  out.sign[static_cast<size_t>(crossing)] = 0;  // removed; ids stay stable

  if (a.comp == b.comp) {
    // oriented smoothing splits one component into two
    const auto& comp = d.components[static_cast<size_t>(a.comp)];
    const int n = static_cast<int>(comp.size());
    const int i = std::min(a.pos, b.pos), j = std::max(a.pos, b.pos);
    std::vector<std::pair<int, bool>> middle, outer;
    for (int p = i + 1; p < j; ++p) middle.push_back(comp[static_cast<size_t>(p)]);
    for (int p = (j + 1) % n; p != i; p = (p + 1) % n) outer.push_back(comp[static_cast<size_t>(p)]);
    for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
      if (c != a.comp) out.components.push_back(d.components[static_cast<size_t>(c)]);
    out.components.push_back(std::move(middle));
    out.components.push_back(std::move(outer));
  } else {
    // merges two components: enter at a, continue around b's component
    const auto& ca = d.components[static_cast<size_t>(a.comp)];
    const auto& cb = d.components[static_cast<size_t>(b.comp)];
    std::vector<std::pair<int, bool>> merged;
    const int na = static_cast<int>(ca.size()), nb = static_cast<int>(cb.size());
    for (int p = 0; p < a.pos; ++p) merged.push_back(ca[static_cast<size_t>(p)]);
    for (int q = (b.pos + 1) % nb; q != b.pos; q = (q + 1) % nb)
      merged.push_back(cb[static_cast<size_t>(q)]);
    for (int p = a.pos + 1; p < na; ++p) merged.push_back(ca[static_cast<size_t>(p)]);
    for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
      if (c != a.comp && c != b.comp) out.components.push_back(d.components[static_cast<size_t>(c)]);
    out.components.push_back(std::move(merged));
  }
  return out;
}

// first crossing (in global traversal order) whose first visit goes under
int first_bad_crossing(const OracleDiagram& d) {
  std::vector<char> seen(d.sign.size(), 0);
  for (const auto& comp : d.components) {
    for (const auto& [id, over] : comp) {
      if (!seen[static_cast<size_t>(id)]) {
        seen[static_cast<size_t>(id)] = 1;
        if (!over) return id;
      }
    }
  }
  return -1;
}

}  // namespace

LaurentPoly conway(const OracleDiagram& d) {
  const int bad = first_bad_crossing(d);
  if (bad < 0) {
    // descending diagram: an unlink of #components circles
    return d.components.size() == 1 ? LaurentPoly::one() : LaurentPoly::zero();
  }
  const int s = d.sign[static_cast<size_t>(bad)];
  const LaurentPoly switched = conway(switch_crossing(d, bad));
  const LaurentPoly smoothed = conway(smooth_crossing(d, bad));
  // s=+1: this is L+, so conway = conway(L-) + z*conway(L0); s=-1 symmetric.
  return switched + LaurentPoly::monomial(1, s) * smoothed;
}

long long conway_a2(const OracleDiagram& d) { return conway(d).coeff(2); }

}  // namespace hexknot::oracle
