#pragma once

// Node lattice of an order-N Lagrangian tetrahedron.
//
// Nodes are entries h^i_{j,k} of Pascal's tetrahedron with
//   0 <= i <= N,  0 <= k <= i,  0 <= j <= i - k.
// Canonical order is ascending i, then k, then j, so each level i occupies a
// contiguous block of ids starting at tet(i) = i(i+1)(i+2)/6.
//
// The element is embedded as the trirectangular corner tetrahedron of leg N:
// node (i, j, k) sits at (x, y, z) = (j, k, N - i). The apex is (0,0,N) and
// level N is the base plane z = 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptsub/errors.hpp"
#include "ptsub/rational.hpp"

namespace ptsub {

using NodeId = std::int64_t;

/// A lattice node h^level_{col,row}.
struct NodeIndex {
  int i = 0; ///< level
  int j = 0; ///< in-level column
  int k = 0; ///< in-level row

  friend constexpr bool operator==(const NodeIndex &, const NodeIndex &) = default;
};

struct LatticeCoords {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend constexpr bool operator==(const LatticeCoords &, const LatticeCoords &) = default;
  friend constexpr auto operator<=>(const LatticeCoords &, const LatticeCoords &) = default;
};

inline std::string to_string(const NodeIndex &n) {
  return "h^" + std::to_string(n.i) + "_{" + std::to_string(n.j) + "," + std::to_string(n.k) + "}";
}

/// Number of nodes with level strictly below `level`.
constexpr NodeId tetrahedral_number(std::int64_t level) {
  return level * (level + 1) * (level + 2) / 6;
}

/// (N+1)(N+2)(N+3)/6.
constexpr NodeId node_count(int order) { return tetrahedral_number(order + 1); }

constexpr bool is_valid_node(const NodeIndex &n, int order) {
  return n.i >= 0 && n.i <= order && n.k >= 0 && n.k <= n.i && n.j >= 0 && n.j <= n.i - n.k;
}

inline NodeId node_to_linear(const NodeIndex &n, int order) {
  if (!is_valid_node(n, order))
    throw ConstraintError("node " + to_string(n) + " violates lattice constraints for order " +
                          std::to_string(order));
  const std::int64_t i = n.i, j = n.j, k = n.k;
  return tetrahedral_number(i) + k * (i + 1) - k * (k - 1) / 2 + j;
}

inline NodeIndex linear_to_node(NodeId id, int order) {
  if (order < 0 || id < 0 || id >= node_count(order))
    throw RangeError("linear id " + std::to_string(id) + " outside [0, " +
                     std::to_string(order < 0 ? 0 : node_count(order)) + ")");
  int i = 0;
  while (tetrahedral_number(i + 1) <= id)
    ++i;
  NodeId rest = id - tetrahedral_number(i);
  int k = 0;
  while (rest >= i - k + 1) { // row k holds i-k+1 nodes
    rest -= i - k + 1;
    ++k;
  }
  return {i, static_cast<int>(rest), k};
}

inline std::vector<NodeIndex> enumerate_nodes(int order) {
  std::vector<NodeIndex> nodes;
  if (order < 0)
    return nodes;
  nodes.reserve(static_cast<std::size_t>(node_count(order)));
  for (int i = 0; i <= order; ++i)
    for (int k = 0; k <= i; ++k)
      for (int j = 0; j <= i - k; ++j)
        nodes.push_back({i, j, k});
  return nodes;
}

constexpr LatticeCoords node_coords(const NodeIndex &n, int order) {
  return {n.j, n.k, order - n.i};
}

/// Corners of the element in barycentric order: apex, then the three base corners.
inline std::array<NodeIndex, 4> corner_nodes(int order) {
  return {{{0, 0, 0}, {order, 0, 0}, {order, order, 0}, {order, 0, order}}};
}

/// Weights w.r.t. corner_nodes(order); they are nonnegative and sum to one.
inline std::array<Rational, 4> node_barycentric(const NodeIndex &n, int order) {
  if (order <= 0)
    throw OrderError("barycentric coordinates are undefined for order " + std::to_string(order));
  if (!is_valid_node(n, order))
    throw ConstraintError("node " + to_string(n) + " violates lattice constraints for order " +
                          std::to_string(order));
  return {Rational(order - n.i, order), Rational(n.i - n.j - n.k, order), Rational(n.j, order),
          Rational(n.k, order)};
}

} // namespace ptsub
