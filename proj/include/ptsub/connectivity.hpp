#pragma once

// Subdivision of an order-N lattice tetrahedron into N^3 unit sub-tetrahedra.
//
// Each level i (1 <= i <= N) contributes the slab between lattice levels i-1
// and i, built from three families:
//   upright  i(i+1)/2    one level i-1 node over an upward level-i triangle
//   fill     2i(i-1)     octahedral holes split along {h^{i-1}_{j-1,k}, h^i_{j,k+1}}
//   chunk    (i-1)(i-2)/2  one level-i node under a downward level-(i-1) triangle
// for a total of i^3 - (i-1)^3 = 3i^2 - 3i + 1 sub-tetrahedra per level.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptsub/errors.hpp"
#include "ptsub/geometry.hpp"
#include "ptsub/lattice.hpp"

namespace ptsub {

enum class TetKind { upright, fill, chunk };

enum class OrientationPolicy {
  as_generated, ///< node order exactly as listed by the construction loops
  positive,     ///< last two nodes swapped where needed so that 6V = +1
};

inline std::string_view to_string(TetKind kind) {
  switch (kind) {
  case TetKind::upright:
    return "upright";
  case TetKind::fill:
    return "fill";
  case TetKind::chunk:
    return "chunk";
  }
  return "?";
}

inline std::string_view to_string(OrientationPolicy policy) {
  return policy == OrientationPolicy::positive ? "positive" : "as-generated";
}

struct SubTet {
  std::array<NodeId, 4> nodes{};
  TetKind kind = TetKind::upright;
  int level = 1;
  std::optional<int> fill_slot; ///< 0..3 for fill tets

  friend bool operator==(const SubTet &, const SubTet &) = default;
};

struct SubdivisionMesh {
  int order = 0;
  std::vector<NodeIndex> nodes;
  std::vector<SubTet> tets;
  OrientationPolicy orientation = OrientationPolicy::positive;

  friend bool operator==(const SubdivisionMesh &, const SubdivisionMesh &) = default;
};

constexpr std::int64_t level_tet_count(std::int64_t level) { return 3 * level * level - 3 * level + 1; }
constexpr std::int64_t upright_count(std::int64_t level) { return level * (level + 1) / 2; }
constexpr std::int64_t fill_count(std::int64_t level) { return 2 * level * (level - 1); }
constexpr std::int64_t chunk_count(std::int64_t level) {
  return level < 3 ? 0 : (level - 1) * (level - 2) / 2;
}

namespace detail {

inline void check_level(int level, int order) {
  if (level < 1 || level > order)
    throw RangeError("level " + std::to_string(level) + " outside [1, " + std::to_string(order) + "]");
}

// Linear ids do not depend on the order, only on (i, j, k).
inline NodeId h(int i, int j, int k) { return node_to_linear({i, j, k}, i); }

} // namespace detail

inline std::vector<SubTet> upright_tets(int level, int order) {
  detail::check_level(level, order);
  using detail::h;
  const int i = level;
  std::vector<SubTet> out;
  out.reserve(static_cast<std::size_t>(upright_count(i)));
  for (int k = 0; k <= i - 1; ++k)
    for (int j = 0; j <= i - k - 1; ++j)
      out.push_back({{h(i - 1, j, k), h(i, j, k), h(i, j + 1, k), h(i, j, k + 1)}, TetKind::upright, i, {}});
  return out;
}

inline std::vector<SubTet> fill_tets(int level, int order) {
  detail::check_level(level, order);
  using detail::h;
  const int i = level;
  std::vector<SubTet> out;
  out.reserve(static_cast<std::size_t>(fill_count(i)));
  for (int k = 0; k <= i - 2; ++k) {
    for (int j = 1; j <= i - k - 1; ++j) {
      // Every tet of the octahedron shares the diagonal {a, b}.
      const NodeId a = h(i - 1, j - 1, k);
      const NodeId b = h(i, j, k + 1);
      out.push_back({{a, b, h(i - 1, j, k), h(i, j, k)}, TetKind::fill, i, 0});
      out.push_back({{a, b, h(i - 1, j, k), h(i - 1, j - 1, k + 1)}, TetKind::fill, i, 1});
      out.push_back({{a, b, h(i, j - 1, k + 1), h(i - 1, j - 1, k + 1)}, TetKind::fill, i, 2});
      out.push_back({{a, b, h(i, j - 1, k + 1), h(i, j, k)}, TetKind::fill, i, 3});
    }
  }
  return out;
}

inline std::vector<SubTet> chunk_tets(int level, int order) {
  detail::check_level(level, order);
  using detail::h;
  const int i = level;
  std::vector<SubTet> out;
  out.reserve(static_cast<std::size_t>(chunk_count(i)));
  for (int k = 0; k <= i - 3; ++k)
    for (int j = 0; j <= i - k - 3; ++j)
      out.push_back({{h(i - 1, j + 1, k), h(i - 1, j + 1, k + 1), h(i - 1, j, k + 1), h(i, j + 1, k + 1)},
                     TetKind::chunk,
                     i,
                     {}});
  return out;
}

/// upright ++ fill ++ chunk for one level.
inline std::vector<SubTet> level_tets(int level, int order) {
  auto out = upright_tets(level, order);
  auto fill = fill_tets(level, order);
  auto chunk = chunk_tets(level, order);
  out.insert(out.end(), fill.begin(), fill.end());
  out.insert(out.end(), chunk.begin(), chunk.end());
  return out;
}

/// Swap the last two nodes of every tet with negative signed volume.
inline void orient_positive(std::vector<SubTet> &tets, int order) {
  for (auto &t : tets)
    if (signed_volume6(t.nodes, order) < 0)
      std::swap(t.nodes[2], t.nodes[3]);
}

/// Wrap an arbitrary tet list into a mesh over the full order-N lattice.
/// No validity checks beyond the order; use validate() for that.
inline SubdivisionMesh make_mesh(int order, std::vector<SubTet> tets,
                                 OrientationPolicy policy = OrientationPolicy::as_generated) {
  if (order < 1)
    throw OrderError("order " + std::to_string(order) + " has no subdivision");
  return {order, enumerate_nodes(order), std::move(tets), policy};
}

inline SubdivisionMesh generate(int order, OrientationPolicy policy = OrientationPolicy::positive) {
  if (order < 1)
    throw OrderError("order " + std::to_string(order) + " has no subdivision");
  std::vector<SubTet> tets;
  tets.reserve(static_cast<std::size_t>(order) * order * order);
  for (int i = 1; i <= order; ++i) {
    auto level = level_tets(i, order);
    tets.insert(tets.end(), level.begin(), level.end());
  }
  if (policy == OrientationPolicy::positive)
    orient_positive(tets, order);
  return make_mesh(order, std::move(tets), policy);
}

} // namespace ptsub
