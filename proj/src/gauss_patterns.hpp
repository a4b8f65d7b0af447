#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "hexknot/diagram.hpp"

namespace hexknot::invariants::detail {

// A "shape" is the restricted traversal subsequence of a 2- or 3-crossing
// subset of a based Gauss code, with the crossings relabeled in order of
// first appearance. Each visit packs into 3 bits: (role << 1) | over.
// Shapes are read most-significant-symbol-first in traversal order.

constexpr std::uint32_t pack_symbol(int role, bool over) {
  return static_cast<std::uint32_t>((role << 1) | (over ? 1 : 0));
}

struct WeightedShape {
  std::uint32_t shape;
  int weight;
};

/// Signed shape counts over all crossing pairs: count[shape] += sign(p)*sign(q).
std::map<std::uint32_t, long long> pair_shape_counts(const diagram::GaussCode& code);

/// Signed shape counts over all crossing triples.
std::map<std::uint32_t, long long> triple_shape_counts(const diagram::GaussCode& code);

/// Weighted sum of shape counts.
long long evaluate_shape_formula(const diagram::GaussCode& code,
                                 std::span<const WeightedShape> pair_shapes,
                                 std::span<const WeightedShape> triple_shapes);

/// Human-readable shape, e.g. "O1 U2 U1 O2" (for diagnostics).
std::string shape_to_string(std::uint32_t shape, int chords);

}  // namespace hexknot::invariants::detail
