#pragma once

// Exact validation of a subdivision mesh.
//
// Every predicate works on integer lattice coordinates (sample points are
// rationals with a fixed power-of-two denominator), so no tolerance appears
// anywhere below.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptsub/connectivity.hpp"
#include "ptsub/geometry.hpp"
#include "ptsub/intersect.hpp"
#include "ptsub/lattice.hpp"

namespace ptsub {

using FaceKey = std::array<NodeId, 3>;

inline FaceKey make_face_key(NodeId a, NodeId b, NodeId c) {
  FaceKey key{a, b, c};
  std::sort(key.begin(), key.end());
  return key;
}

struct FaceUse {
  std::size_t tet = 0;
  int local_face = 0; ///< index of the tet node opposite to the face

  friend bool operator==(const FaceUse &, const FaceUse &) = default;
};

using FaceIncidence = std::map<FaceKey, std::vector<FaceUse>>;

/// Local face f of a tet omits node f.
inline FaceKey tet_face(const SubTet &tet, int local_face) {
  std::array<NodeId, 3> f{};
  int n = 0;
  for (int v = 0; v < 4; ++v)
    if (v != local_face)
      f[n++] = tet.nodes[v];
  return make_face_key(f[0], f[1], f[2]);
}

/// Tets must reference distinct nodes of the lattice.
inline bool is_well_formed(const SubTet &tet, int order) {
  const auto count = node_count(order);
  for (std::size_t a = 0; a < 4; ++a) {
    if (tet.nodes[a] < 0 || tet.nodes[a] >= count)
      return false;
    for (std::size_t b = a + 1; b < 4; ++b)
      if (tet.nodes[a] == tet.nodes[b])
        return false;
  }
  return true;
}

/// Registers all four faces of every well-formed tet. Malformed tets are skipped.
inline FaceIncidence build_face_incidence(const SubdivisionMesh &mesh) {
  FaceIncidence incidence;
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    if (!is_well_formed(mesh.tets[t], mesh.order))
      continue;
    for (int f = 0; f < 4; ++f)
      incidence[tet_face(mesh.tets[t], f)].push_back({t, f});
  }
  return incidence;
}

enum class BoundaryPlane { j_zero, k_zero, base, slant, interior };

inline std::string_view to_string(BoundaryPlane plane) {
  switch (plane) {
  case BoundaryPlane::j_zero:
    return "j=0";
  case BoundaryPlane::k_zero:
    return "k=0";
  case BoundaryPlane::base:
    return "i=N";
  case BoundaryPlane::slant:
    return "j+k=i";
  case BoundaryPlane::interior:
    return "interior";
  }
  return "?";
}

inline constexpr std::array<BoundaryPlane, 4> kBoundaryPlanes{BoundaryPlane::j_zero, BoundaryPlane::k_zero,
                                                              BoundaryPlane::base, BoundaryPlane::slant};

inline bool on_plane(const NodeIndex &n, BoundaryPlane plane, int order) {
  switch (plane) {
  case BoundaryPlane::j_zero:
    return n.j == 0;
  case BoundaryPlane::k_zero:
    return n.k == 0;
  case BoundaryPlane::base:
    return n.i == order;
  case BoundaryPlane::slant:
    return n.j + n.k == n.i;
  case BoundaryPlane::interior:
    return false;
  }
  return false;
}

/// The reference-element face plane containing all three nodes, or interior.
inline BoundaryPlane classify_boundary_face(const FaceKey &face, int order) {
  std::array<NodeIndex, 3> n;
  for (std::size_t v = 0; v < 3; ++v)
    n[v] = linear_to_node(face[v], order);
  for (auto plane : kBoundaryPlanes)
    if (std::all_of(n.begin(), n.end(), [&](const NodeIndex &x) { return on_plane(x, plane, order); }))
      return plane;
  return BoundaryPlane::interior;
}

/// 2D lattice parameterization of a node lying on `plane`. In these
/// coordinates the natural triangulation has edges along (1,0), (0,1), (1,-1).
inline std::array<std::int64_t, 2> plane_coords(const NodeIndex &n, BoundaryPlane plane, int order) {
  const auto c = node_coords(n, order);
  switch (plane) {
  case BoundaryPlane::j_zero:
    return {c.y, c.z};
  case BoundaryPlane::k_zero:
    return {c.x, c.z};
  default:
    return {c.x, c.y};
  }
}

enum class UnitTriangle { none, upward, downward };

/// Upward {(a,b),(a+1,b),(a,b+1)} or downward {(a+1,b),(a,b+1),(a+1,b+1)}.
inline UnitTriangle unit_triangle_type(std::array<std::array<std::int64_t, 2>, 3> p) {
  std::sort(p.begin(), p.end());
  const auto a = p[0][0], b = p[0][1];
  if (p[1] == std::array<std::int64_t, 2>{a, b + 1} && p[2] == std::array<std::int64_t, 2>{a + 1, b})
    return UnitTriangle::upward;
  // Sorted downward triangle: (a, b+1), (a+1, b), (a+1, b+1) with (a, b+1) first.
  if (p[1] == std::array<std::int64_t, 2>{a + 1, b - 1} && p[2] == std::array<std::int64_t, 2>{a + 1, b})
    return UnitTriangle::downward;
  return UnitTriangle::none;
}

// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::vector<std::string> details;
  std::size_t omitted_details = 0; ///< failures beyond the detail cap
};

struct GapRegion {
  std::size_t faces = 0;
  int min_level = 0;
  int max_level = 0; ///< slab level: the region lies between levels max_level-1 and max_level
};

struct ValidationStats {
  std::int64_t abs_volume6_sum = 0;
  std::int64_t signed_volume6_sum = 0;
  std::size_t boundary_faces = 0;
  std::size_t interior_faces = 0;
  std::size_t nonmanifold_faces = 0;
  std::vector<GapRegion> gap_regions;
  std::int64_t euler_characteristic = 0;
  std::int64_t samples = 0;
  std::int64_t sample_gaps = 0;
  std::int64_t sample_overlaps = 0;
  std::int64_t intersecting_pairs = 0;
};

struct ValidationReport {
  int order = 0;
  std::size_t tet_count = 0;
  std::vector<CheckResult> checks;
  ValidationStats stats;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
  }

  const CheckResult *find(std::string_view name) const {
    for (const auto &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }
};

struct ValidationOptions {
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  int pairwise_max_order = 3; ///< exhaustive tet-tet test runs only for order <= this
};

namespace detail {

constexpr std::size_t kMaxDetails = 20;

class DetailSink {
public:
  explicit DetailSink(CheckResult &result) : result_(result) {}

  void fail(std::string message) {
    result_.passed = false;
    if (result_.details.size() < kMaxDetails)
      result_.details.push_back(std::move(message));
    else
      ++result_.omitted_details;
  }
  void note(std::string message) { result_.details.push_back(std::move(message)); }

private:
  CheckResult &result_;
};

inline std::string describe(const FaceKey &face, int order) {
  std::string s = "{";
  for (std::size_t v = 0; v < 3; ++v) {
    if (v)
      s += ", ";
    s += to_string(linear_to_node(face[v], order));
  }
  return s + "}";
}

inline std::string describe(const SubTet &tet, int order) {
  std::string s = "{";
  for (std::size_t v = 0; v < 4; ++v) {
    if (v)
      s += ", ";
    s += tet.nodes[v] >= 0 && tet.nodes[v] < node_count(order) ? to_string(linear_to_node(tet.nodes[v], order))
                                                                 : "#" + std::to_string(tet.nodes[v]);
  }
  return s + "}";
}

inline TetPoints tet_points(const SubTet &tet, int order) {
  TetPoints p;
  for (std::size_t v = 0; v < 4; ++v)
    p[v] = to_vec(node_coords(linear_to_node(tet.nodes[v], order), order));
  return p;
}

struct FaceAnalysis {
  std::vector<FaceKey> boundary;          ///< incidence 1, on a reference plane
  std::vector<FaceKey> hole;              ///< incidence 1, not on any reference plane
  std::vector<FaceKey> nonmanifold;       ///< incidence > 2
  std::map<FaceKey, BoundaryPlane> plane; ///< for `boundary` faces
  std::size_t interior = 0;
};

inline FaceAnalysis analyze_faces(const FaceIncidence &incidence, int order) {
  FaceAnalysis a;
  for (const auto &[face, uses] : incidence) {
    if (uses.size() > 2) {
      a.nonmanifold.push_back(face);
    } else if (uses.size() == 2) {
      ++a.interior;
    } else {
      const auto plane = classify_boundary_face(face, order);
      if (plane == BoundaryPlane::interior) {
        a.hole.push_back(face);
      } else {
        a.boundary.push_back(face);
        a.plane.emplace(face, plane);
      }
    }
  }
  return a;
}

/// Connected components of hole faces, joined across shared edges.
inline std::vector<GapRegion> gap_regions(const std::vector<FaceKey> &hole, int order) {
  std::vector<std::size_t> parent(hole.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::pair<NodeId, NodeId>, std::size_t> edge_owner;
  for (std::size_t f = 0; f < hole.size(); ++f) {
    const auto &k = hole[f];
    for (auto e : {std::pair{k[0], k[1]}, std::pair{k[0], k[2]}, std::pair{k[1], k[2]}}) {
      auto [it, inserted] = edge_owner.emplace(e, f);
      if (!inserted)
        parent[find(f)] = find(it->second);
    }
  }
  std::map<std::size_t, GapRegion> regions;
  for (std::size_t f = 0; f < hole.size(); ++f) {
    auto [it, inserted] = regions.try_emplace(find(f), GapRegion{0, order, 0});
    auto &r = it->second;
    for (auto id : hole[f]) {
      const int level = linear_to_node(id, order).i;
      r.min_level = std::min(r.min_level, level);
      r.max_level = std::max(r.max_level, level);
    }
    ++r.faces;
  }
  std::vector<GapRegion> out;
  for (auto &[root, r] : regions)
    out.push_back(r);
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Individual checks. Each is usable on its own; validate() runs all of them.

inline CheckResult check_volumes(const SubdivisionMesh &mesh, ValidationStats *stats = nullptr) {
  CheckResult result{"volume", true, false, {}};
  detail::DetailSink sink(result);
  const std::int64_t n3 = std::int64_t{mesh.order} * mesh.order * mesh.order;
  std::int64_t abs_sum = 0, signed_sum = 0;
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto &tet = mesh.tets[t];
    if (!is_well_formed(tet, mesh.order)) {
      sink.fail("tet " + std::to_string(t) + " is malformed " + detail::describe(tet, mesh.order));
      continue;
    }
    const auto v6 = signed_volume6(tet.nodes, mesh.order);
    abs_sum += v6 < 0 ? -v6 : v6;
    signed_sum += v6;
    if (v6 != 1 && v6 != -1)
      sink.fail("tet " + std::to_string(t) + " " + detail::describe(tet, mesh.order) + " has 6V = " +
                std::to_string(v6));
    else if (mesh.orientation == OrientationPolicy::positive && v6 != 1)
      sink.fail("tet " + std::to_string(t) + " " + detail::describe(tet, mesh.order) +
                " is negatively oriented under the positive policy");
  }
  if (abs_sum != n3)
    sink.fail("sum |6V| = " + std::to_string(abs_sum) + ", expected N^3 = " + std::to_string(n3));
  if (mesh.orientation == OrientationPolicy::positive && signed_sum != n3)
    sink.fail("sum 6V = " + std::to_string(signed_sum) + ", expected N^3 = " + std::to_string(n3));
  if (stats) {
    stats->abs_volume6_sum = abs_sum;
    stats->signed_volume6_sum = signed_sum;
  }
  return result;
}

inline CheckResult check_face_pairing(const SubdivisionMesh &mesh, const FaceIncidence &incidence,
                                      ValidationStats *stats = nullptr) {
  CheckResult result{"face_pairing", true, false, {}};
  const auto faces = detail::analyze_faces(incidence, mesh.order);
  const auto regions = detail::gap_regions(faces.hole, mesh.order);
  {
    detail::DetailSink sink(result);
    for (const auto &f : faces.nonmanifold)
      sink.fail("face " + detail::describe(f, mesh.order) + " is shared by " +
                std::to_string(incidence.at(f).size()) + " tets");
    const std::size_t expected = 4u * static_cast<std::size_t>(mesh.order) * mesh.order;
    const std::size_t open = faces.boundary.size() + faces.hole.size();
    if (open != expected)
      sink.fail(std::to_string(open) + " faces with a single tet, expected 4N^2 = " + std::to_string(expected));
    for (const auto &r : regions)
      sink.fail("gap region of " + std::to_string(r.faces) + " interior faces between levels " +
                std::to_string(r.min_level) + " and " + std::to_string(r.max_level));
  }
  if (stats) {
    stats->boundary_faces = faces.boundary.size() + faces.hole.size();
    stats->interior_faces = faces.interior;
    stats->nonmanifold_faces = faces.nonmanifold.size();
    stats->gap_regions = regions;
  }
  return result;
}

struct PlaneCensus {
  std::size_t upward = 0;
  std::size_t downward = 0;
  std::vector<FaceKey> non_unit;
  std::size_t vertices = 0;
  std::size_t edges = 0;

  std::size_t triangles() const { return upward + downward + non_unit.size(); }
};

/// Boundary triangles of each element face, projected to that face's 2D lattice.
inline std::array<PlaneCensus, 4> boundary_census(const SubdivisionMesh &mesh, const FaceIncidence &incidence) {
  const int order = mesh.order;
  const auto faces = detail::analyze_faces(incidence, order);
  std::array<PlaneCensus, 4> census;
  for (std::size_t pi = 0; pi < kBoundaryPlanes.size(); ++pi) {
    const auto plane = kBoundaryPlanes[pi];
    auto &c = census[pi];
    std::set<NodeId> vertices;
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const auto &f : faces.boundary) {
      if (faces.plane.at(f) != plane)
        continue;
      std::array<std::array<std::int64_t, 2>, 3> p;
      for (std::size_t v = 0; v < 3; ++v) {
        p[v] = plane_coords(linear_to_node(f[v], order), plane, order);
        vertices.insert(f[v]);
      }
      edges.insert({f[0], f[1]});
      edges.insert({f[0], f[2]});
      edges.insert({f[1], f[2]});
      switch (unit_triangle_type(p)) {
      case UnitTriangle::upward:
        ++c.upward;
        break;
      case UnitTriangle::downward:
        ++c.downward;
        break;
      case UnitTriangle::none:
        c.non_unit.push_back(f);
        break;
      }
    }
    c.vertices = vertices.size();
    c.edges = edges.size();
  }
  return census;
}

/// Each element face must carry exactly the natural unit triangulation of the
/// order-N Pascal triangle: N^2 unit triangles, no extra vertices or edges.
inline CheckResult check_boundary_congruence(const SubdivisionMesh &mesh, const FaceIncidence &incidence) {
  CheckResult result{"boundary_congruence", true, false, {}};
  detail::DetailSink sink(result);
  const int order = mesh.order;
  for (const auto &f : detail::analyze_faces(incidence, order).hole)
    sink.fail("exterior face " + detail::describe(f, order) + " lies on no element face");

  const auto census = boundary_census(mesh, incidence);
  const std::int64_t n = order;
  const auto want_triangles = static_cast<std::size_t>(n * n);
  const auto want_vertices = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
  const auto want_edges = static_cast<std::size_t>(3 * n * (n + 1) / 2);
  for (std::size_t pi = 0; pi < kBoundaryPlanes.size(); ++pi) {
    const auto &c = census[pi];
    const std::string tag(to_string(kBoundaryPlanes[pi]));
    for (const auto &f : c.non_unit)
      sink.fail("face " + detail::describe(f, order) + " on plane " + tag + " is not a unit lattice triangle");
    if (c.triangles() != want_triangles)
      sink.fail("plane " + tag + " carries " + std::to_string(c.triangles()) + " triangles, expected N^2 = " +
                std::to_string(want_triangles));
    if (c.vertices != want_vertices)
      sink.fail("plane " + tag + " has " + std::to_string(c.vertices) + " boundary vertices, expected " +
                std::to_string(want_vertices));
    if (c.edges != want_edges)
      sink.fail("plane " + tag + " has " + std::to_string(c.edges) + " boundary edges, expected " +
                std::to_string(want_edges));
  }
  if (result.passed)
    for (std::size_t pi = 0; pi < kBoundaryPlanes.size(); ++pi)
      sink.note("plane " + std::string(to_string(kBoundaryPlanes[pi])) + ": " +
                std::to_string(census[pi].upward) + " upward + " + std::to_string(census[pi].downward) +
                " downward");
  return result;
}

inline CheckResult check_counts(const SubdivisionMesh &mesh) {
  CheckResult result{"counts", true, false, {}};
  detail::DetailSink sink(result);
  const int order = mesh.order;
  if (mesh.nodes != enumerate_nodes(order))
    sink.fail("node list (" + std::to_string(mesh.nodes.size()) + " nodes) differs from the order-" +
              std::to_string(order) + " lattice (" + std::to_string(node_count(order)) + " nodes)");
  const std::int64_t n3 = std::int64_t{order} * order * order;
  if (static_cast<std::int64_t>(mesh.tets.size()) != n3)
    sink.fail(std::to_string(mesh.tets.size()) + " tets, expected N^3 = " + std::to_string(n3));
  std::vector<std::int64_t> per_level(static_cast<std::size_t>(order) + 1, 0);
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto &tet = mesh.tets[t];
    if (!is_well_formed(tet, order))
      sink.fail("tet " + std::to_string(t) + " references invalid or repeated nodes " +
                detail::describe(tet, order));
    if (tet.level < 1 || tet.level > order)
      sink.fail("tet " + std::to_string(t) + " has level " + std::to_string(tet.level));
    else
      ++per_level[static_cast<std::size_t>(tet.level)];
  }
  for (int i = 1; i <= order; ++i)
    if (per_level[static_cast<std::size_t>(i)] != level_tet_count(i))
      sink.fail("level " + std::to_string(i) + " has " + std::to_string(per_level[static_cast<std::size_t>(i)]) +
                " tets, expected 3i^2-3i+1 = " + std::to_string(level_tet_count(i)));
  return result;
}

/// V - E + F over the faces that belong to exactly one tet.
inline CheckResult check_boundary_euler(const SubdivisionMesh &mesh, const FaceIncidence &incidence,
                                        ValidationStats *stats = nullptr) {
  CheckResult result{"boundary_euler", true, false, {}};
  detail::DetailSink sink(result);
  std::set<NodeId> vertices;
  std::set<std::pair<NodeId, NodeId>> edges;
  std::int64_t faces = 0;
  for (const auto &[f, uses] : incidence) {
    if (uses.size() != 1)
      continue;
    ++faces;
    vertices.insert(f.begin(), f.end());
    edges.insert({f[0], f[1]});
    edges.insert({f[0], f[2]});
    edges.insert({f[1], f[2]});
  }
  const auto v = static_cast<std::int64_t>(vertices.size());
  const auto e = static_cast<std::int64_t>(edges.size());
  const auto chi = v - e + faces;
  if (chi != 2)
    sink.fail("V - E + F = " + std::to_string(v) + " - " + std::to_string(e) + " + " + std::to_string(faces) +
              " = " + std::to_string(chi) + ", expected 2");
  else
    sink.note("V=" + std::to_string(v) + " E=" + std::to_string(e) + " F=" + std::to_string(faces));
  if (stats)
    stats->euler_characteristic = chi;
  (void)mesh;
  return result;
}

/// Seeded rational points in the open reference tetrahedron; each must lie
/// strictly inside exactly one sub-tet. Points on any sub-tet face plane are
/// redrawn, so no tie-breaking is needed.
inline CheckResult check_containment_sampling(const SubdivisionMesh &mesh, std::int64_t sample_count,
                                              std::uint64_t seed, ValidationStats *stats = nullptr) {
  CheckResult result{"containment_sampling", true, false, {}};
  detail::DetailSink sink(result);
  if (sample_count < 1) {
    sink.fail("sample count must be at least 1");
    return result;
  }
  const int order = mesh.order;
  constexpr std::int64_t kDenominator = std::int64_t{1} << 20;
  const std::int64_t extent = std::int64_t{order} * kDenominator;

  // Unique face planes with a fixed normal per face, and for each tet the
  // side of each face plane on which its interior lies.
  struct Plane {
    Vec3 normal;
    Vec3 origin_scaled; // face node 0 times the denominator
  };
  std::vector<Plane> planes;
  std::map<FaceKey, std::size_t> plane_of;
  struct TetSides {
    std::size_t tet;
    std::array<std::size_t, 4> plane;
    std::array<int, 4> side;
  };
  std::vector<TetSides> tets;
  auto sign = [](std::int64_t v) { return (v > 0) - (v < 0); };
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto &tet = mesh.tets[t];
    if (!is_well_formed(tet, order))
      continue;
    TetSides ts{t, {}, {}};
    for (int f = 0; f < 4; ++f) {
      const auto key = tet_face(tet, f);
      auto [it, inserted] = plane_of.try_emplace(key, planes.size());
      std::array<Vec3, 3> p;
      for (std::size_t v = 0; v < 3; ++v)
        p[v] = to_vec(node_coords(linear_to_node(key[v], order), order));
      if (inserted) {
        const Vec3 s{p[0].x * kDenominator, p[0].y * kDenominator, p[0].z * kDenominator};
        planes.push_back({cross(p[1] - p[0], p[2] - p[0]), s});
      }
      const auto &pl = planes[it->second];
      const auto opposite = to_vec(node_coords(linear_to_node(tet.nodes[static_cast<std::size_t>(f)], order), order));
      ts.plane[static_cast<std::size_t>(f)] = it->second;
      ts.side[static_cast<std::size_t>(f)] = sign(dot(pl.normal, opposite - p[0]));
    }
    tets.push_back(ts);
  }

  std::mt19937_64 rng(seed);
  auto draw = [&] { return 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(extent - 1)); };
  std::vector<int> side(planes.size());
  std::int64_t gaps = 0, overlaps = 0;
  constexpr int kMaxRedraws = 1000;
  for (std::int64_t s = 0; s < sample_count; ++s) {
    Vec3 point;
    int redraws = 0;
    for (;; ++redraws) {
      if (redraws > kMaxRedraws) {
        sink.fail("could not draw a point off all face planes");
        return result;
      }
      point = {draw(), draw(), draw()};
      if (point.x + point.y + point.z >= extent)
        continue;
      bool on_face = false;
      for (std::size_t p = 0; p < planes.size() && !on_face; ++p) {
        side[p] = sign(dot(planes[p].normal, point - planes[p].origin_scaled));
        on_face = side[p] == 0;
      }
      if (!on_face)
        break;
    }
    int hits = 0;
    for (const auto &ts : tets) {
      bool inside = true;
      for (std::size_t f = 0; f < 4 && inside; ++f)
        inside = ts.side[f] != 0 && side[ts.plane[f]] == ts.side[f];
      hits += inside;
    }
    if (hits != 1) {
      (hits == 0 ? gaps : overlaps)++;
      std::ostringstream os;
      os << "point (" << point.x << ", " << point.y << ", " << point.z << ")/" << kDenominator << " lies in "
         << hits << " tets";
      sink.fail(os.str());
    }
  }
  if (gaps > 0)
    sink.note(std::to_string(gaps) + " of " + std::to_string(sample_count) + " samples fell in gaps");
  if (overlaps > 0)
    sink.note(std::to_string(overlaps) + " of " + std::to_string(sample_count) + " samples fell in overlaps");
  if (stats) {
    stats->samples = sample_count;
    stats->sample_gaps = gaps;
    stats->sample_overlaps = overlaps;
  }
  return result;
}

/// Exhaustive exact tet-tet interior intersection, O(T^2).
inline CheckResult check_pairwise_disjoint(const SubdivisionMesh &mesh, ValidationStats *stats = nullptr) {
  CheckResult result{"pairwise_disjoint", true, false, {}};
  detail::DetailSink sink(result);
  std::vector<std::pair<std::size_t, TetPoints>> solid;
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto &tet = mesh.tets[t];
    if (is_well_formed(tet, mesh.order) && signed_volume6(tet.nodes, mesh.order) != 0)
      solid.emplace_back(t, detail::tet_points(tet, mesh.order));
  }
  std::int64_t hits = 0;
  for (std::size_t a = 0; a < solid.size(); ++a)
    for (std::size_t b = a + 1; b < solid.size(); ++b)
      if (interiors_intersect(solid[a].second, solid[b].second)) {
        ++hits;
        sink.fail("tets " + std::to_string(solid[a].first) + " and " + std::to_string(solid[b].first) +
                  " overlap");
      }
  if (stats)
    stats->intersecting_pairs = hits;
  return result;
}

inline ValidationReport validate(const SubdivisionMesh &mesh, const ValidationOptions &options = {}) {
  ValidationReport report;
  report.order = mesh.order;
  report.tet_count = mesh.tets.size();
  const auto incidence = build_face_incidence(mesh);
  report.checks.push_back(check_volumes(mesh, &report.stats));
  report.checks.push_back(check_face_pairing(mesh, incidence, &report.stats));
  report.checks.push_back(check_boundary_congruence(mesh, incidence));
  report.checks.push_back(check_counts(mesh));
  report.checks.push_back(check_boundary_euler(mesh, incidence, &report.stats));
  report.checks.push_back(check_containment_sampling(mesh, options.samples, options.seed, &report.stats));
  if (mesh.order <= options.pairwise_max_order) {
    report.checks.push_back(check_pairwise_disjoint(mesh, &report.stats));
  } else {
    CheckResult skipped{"pairwise_disjoint", true, true, {}};
    skipped.details.push_back("skipped: order " + std::to_string(mesh.order) + " exceeds limit " +
                              std::to_string(options.pairwise_max_order));
    report.checks.push_back(std::move(skipped));
  }
  return report;
}

// ---------------------------------------------------------------------------

inline std::string to_text(const ValidationReport &report) {
  std::ostringstream os;
  os << "order " << report.order << ", " << report.tet_count << " tets\n";
  for (const auto &c : report.checks) {
    os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << c.name << '\n';
    for (const auto &d : c.details)
      os << "      " << d << '\n';
    if (c.omitted_details > 0)
      os << "      ... and " << c.omitted_details << " more\n";
  }
  os << (report.passed() ? "result: PASS" : "result: FAIL") << '\n';
  return os.str();
}

inline nlohmann::json to_json(const ValidationReport &report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto &c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped}, {"details", c.details}, {"omitted_details", c.omitted_details}});
  nlohmann::json regions = nlohmann::json::array();
  for (const auto &r : report.stats.gap_regions)
    regions.push_back({{"faces", r.faces}, {"min_level", r.min_level}, {"max_level", r.max_level}});
  const auto &s = report.stats;
  return {{"order", report.order},
          {"tets", report.tet_count},
          {"passed", report.passed()},
          {"checks", checks},
          {"stats",
           {{"abs_volume6_sum", s.abs_volume6_sum},
            {"signed_volume6_sum", s.signed_volume6_sum},
            {"boundary_faces", s.boundary_faces},
            {"interior_faces", s.interior_faces},
            {"nonmanifold_faces", s.nonmanifold_faces},
            {"gap_regions", regions},
            {"euler_characteristic", s.euler_characteristic},
            {"samples", s.samples},
            {"sample_gaps", s.sample_gaps},
            {"sample_overlaps", s.sample_overlaps},
            {"intersecting_pairs", s.intersecting_pairs}}}};
}

} // namespace ptsub
