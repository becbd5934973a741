#pragma once

// Test-only reference computations. Nothing here calls into the library's
// indexing, geometry or validation code paths.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

struct Node {
  int i, j, k;
  auto operator<=>(const Node &) const = default;
};

/// All (i, j, k) in the cube [0, N]^3 that satisfy the lattice constraints,
/// sorted by (i, k, j).
inline std::vector<Node> enumerate(int order) {
  std::vector<Node> nodes;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; j <= order; ++j)
      for (int k = 0; k <= order; ++k)
        if (k <= i && j <= i - k)
          nodes.push_back({i, j, k});
  std::sort(nodes.begin(), nodes.end(), [](const Node &a, const Node &b) {
    return std::tie(a.i, a.k, a.j) < std::tie(b.i, b.k, b.j);
  });
  return nodes;
}

inline std::int64_t index_of(const Node &n, int order) {
  const auto all = enumerate(order);
  return std::find(all.begin(), all.end(), n) - all.begin();
}

/// Leibniz expansion of det[rows].
inline std::int64_t det3(const std::array<std::array<std::int64_t, 3>, 3> &m) {
  return m[0][0] * m[1][1] * m[2][2] + m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[1][0] * m[2][1] -
         m[0][2] * m[1][1] * m[2][0] - m[0][0] * m[1][2] * m[2][1] - m[0][1] * m[1][0] * m[2][2];
}

using P = std::array<std::int64_t, 3>;

inline P position(const Node &n, int order) { return {n.j, n.k, order - n.i}; }

inline std::int64_t volume6(const std::array<P, 4> &p) {
  std::array<std::array<std::int64_t, 3>, 3> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m[r][c] = p[r + 1][c] - p[0][c];
  return det3(m);
}

/// Point (num / den) strictly inside tet p: all four barycentric weights,
/// obtained by Cramer's rule, are positive.
inline bool strictly_inside(const std::array<P, 4> &p, const P &num, std::int64_t den) {
  const auto total = volume6(p);
  if (total == 0)
    return false;
  for (int v = 0; v < 4; ++v) {
    // Replace vertex v by the point; work in units of 1/den.
    std::array<std::array<std::int64_t, 3>, 3> m;
    std::array<P, 4> q;
    for (int w = 0; w < 4; ++w)
      for (int c = 0; c < 3; ++c)
        q[w][c] = (w == v) ? num[c] : p[w][c] * den;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        m[r][c] = q[r + 1][c] - q[0][c];
    const auto part = det3(m);
    if (total > 0 ? part <= 0 : part >= 0)
      return false;
  }
  return true;
}

/// Counts of sub-tets of a level by family, from the loop bounds.
inline std::array<std::int64_t, 3> level_census(int level) {
  std::int64_t upright = 0, fill = 0, chunk = 0;
  for (int k = 0; k <= level - 1; ++k)
    for (int j = 0; j <= level - k - 1; ++j)
      ++upright;
  for (int k = 0; k <= level - 2; ++k)
    for (int j = 1; j <= level - k - 1; ++j)
      fill += 4;
  for (int k = 0; k <= level - 3; ++k)
    for (int j = 0; j <= level - k - 3; ++j)
      ++chunk;
  return {upright, fill, chunk};
}

/// Natural triangulation of the 2D Pascal triangle of order N in coordinates
/// (a, b) with a + b <= N: returns {upward, downward} counts.
inline std::pair<std::int64_t, std::int64_t> triangle_census(int order) {
  std::int64_t up = 0, down = 0;
  for (int a = 0; a <= order; ++a)
    for (int b = 0; b <= order; ++b) {
      if (a + b + 1 <= order)
        ++up; // (a,b) (a+1,b) (a,b+1)
      if (a + b + 2 <= order)
        ++down; // (a+1,b) (a,b+1) (a+1,b+1)
    }
  return {up, down};
}

} // namespace oracle
