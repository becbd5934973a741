#pragma once

// Exact interior-intersection test for two lattice tetrahedra.
//
// Two convex polytopes have disjoint interiors iff some plane weakly separates
// them, and such a plane can always be found among the face normals of either
// polytope or the cross products of an edge of each. All quantities are
// integer, so the test is exact.

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>

#include "ptsub/geometry.hpp"

namespace ptsub {

using TetPoints = std::array<Vec3, 4>;

namespace detail {

inline std::pair<std::int64_t, std::int64_t> project(const TetPoints &t, const Vec3 &axis) {
  std::int64_t lo = dot(t[0], axis), hi = lo;
  for (std::size_t v = 1; v < 4; ++v) {
    const auto d = dot(t[v], axis);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

inline bool separates(const TetPoints &a, const TetPoints &b, const Vec3 &axis) {
  if (is_zero(axis))
    return false;
  const auto [alo, ahi] = project(a, axis);
  const auto [blo, bhi] = project(b, axis);
  return ahi <= blo || bhi <= alo;
}

constexpr std::array<std::array<int, 3>, 4> kFaces{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
constexpr std::array<std::array<int, 2>, 6> kEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

} // namespace detail

/// True iff the open interiors of two non-degenerate tetrahedra overlap.
inline bool interiors_intersect(const TetPoints &a, const TetPoints &b) {
  using namespace detail;
  for (const auto *t : {&a, &b})
    for (const auto &f : kFaces) {
      const auto &p = *t;
      if (separates(a, b, cross(p[f[1]] - p[f[0]], p[f[2]] - p[f[0]])))
        return false;
    }
  for (const auto &ea : kEdges)
    for (const auto &eb : kEdges)
      if (separates(a, b, cross(a[ea[1]] - a[ea[0]], b[eb[1]] - b[eb[0]])))
        return false;
  return true;
}

} // namespace ptsub
