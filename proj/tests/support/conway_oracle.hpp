#pragma once

#include <utility>
#include <vector>

#include "hexknot/diagram.hpp"
#include "hexknot/laurent.hpp"

// Independent Conway-polynomial oracle: resolves the diagram by the skein
// relation conway(L+) - conway(L-) = z * conway(L0) down to descending
// diagrams. Shares no code with the Gauss-diagram invariants it checks.
namespace hexknot::oracle {

struct OracleDiagram {
  // per-crossing sign (+1/-1), matching the extractor's det convention
  std::vector<int> sign;
  // components as cyclic visit sequences (crossing id, over?)
  std::vector<std::vector<std::pair<int, bool>>> components;

  static OracleDiagram from_gauss_code(const diagram::GaussCode& code);
  /// Alternating (2,n) torus diagram: O1 U2 O3 ... with all signs +1.
  static OracleDiagram torus_2n(int n);
};

/// Conway polynomial in z (exact integers).
LaurentPoly conway(const OracleDiagram& d);

/// Quadratic coefficient a2 of the Conway polynomial.
long long conway_a2(const OracleDiagram& d);

}  // namespace hexknot::oracle
