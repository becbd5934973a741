#pragma once

// Exact integer predicates on lattice geometry.

#include <array>
#include <cstdint>
#include <span>

#include "ptsub/lattice.hpp"

namespace ptsub {

struct Vec3 {
  std::int64_t x = 0, y = 0, z = 0;

  friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 to_vec(const LatticeCoords &c) { return {c.x, c.y, c.z}; }

constexpr std::int64_t dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr bool is_zero(const Vec3 &v) { return v.x == 0 && v.y == 0 && v.z == 0; }

/// det[b-a, c-a, d-a]; six times the signed volume of tetrahedron abcd.
constexpr std::int64_t orient3d(const Vec3 &a, const Vec3 &b, const Vec3 &c, const Vec3 &d) {
  return dot(cross(b - a, c - a), d - a);
}

/// Six times the signed volume of a tetrahedron given by linear node ids.
/// Degenerate input (repeated node, coplanar nodes) yields 0.
inline std::int64_t signed_volume6(std::span<const NodeId, 4> tet, int order) {
  std::array<Vec3, 4> p;
  for (std::size_t v = 0; v < 4; ++v)
    p[v] = to_vec(node_coords(linear_to_node(tet[v], order), order));
  return orient3d(p[0], p[1], p[2], p[3]);
}

} // namespace ptsub
