#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "ptsub/connectivity.hpp"
#include "ptsub/geometry.hpp"

namespace {

using ptsub::NodeId;
using ptsub::SubTet;
using ptsub::TetKind;

NodeId h(int i, int j, int k) { return ptsub::node_to_linear({i, j, k}, i); }

using Quad = std::array<NodeId, 4>;

std::set<std::set<NodeId>> vertex_sets(const std::vector<SubTet> &tets) {
  std::set<std::set<NodeId>> out;
  for (const auto &t : tets)
    out.insert(std::set<NodeId>(t.nodes.begin(), t.nodes.end()));
  return out;
}

std::vector<Quad> node_lists(const std::vector<SubTet> &tets) {
  std::vector<Quad> out;
  for (const auto &t : tets)
    out.push_back(t.nodes);
  return out;
}

// The P1 tet and the eight P2 sub-tetrahedra, written out by hand.
const Quad kP1{h(0, 0, 0), h(1, 0, 0), h(1, 1, 0), h(1, 0, 1)};
const std::vector<Quad> kP2Upright{
    {h(1, 0, 0), h(2, 0, 0), h(2, 1, 0), h(2, 0, 1)},
    {h(1, 1, 0), h(2, 1, 0), h(2, 2, 0), h(2, 1, 1)},
    {h(1, 0, 1), h(2, 0, 1), h(2, 1, 1), h(2, 0, 2)},
};
const std::vector<Quad> kP2Fill{
    {h(1, 0, 0), h(2, 1, 1), h(1, 1, 0), h(2, 1, 0)},
    {h(1, 0, 0), h(2, 1, 1), h(1, 1, 0), h(1, 0, 1)},
    {h(1, 0, 0), h(2, 1, 1), h(2, 0, 1), h(1, 0, 1)},
    {h(1, 0, 0), h(2, 1, 1), h(2, 0, 1), h(2, 1, 0)},
};

TEST(Connectivity, UprightTets) {
  EXPECT_EQ(node_lists(ptsub::upright_tets(1, 1)), std::vector<Quad>{kP1});
  EXPECT_EQ(node_lists(ptsub::upright_tets(2, 2)), kP2Upright);
  EXPECT_EQ(ptsub::upright_tets(3, 3).size(), 6u);
  for (const auto &t : ptsub::upright_tets(3, 5)) {
    EXPECT_EQ(t.kind, TetKind::upright);
    EXPECT_EQ(t.level, 3);
    EXPECT_FALSE(t.fill_slot.has_value());
  }
}

TEST(Connectivity, FillTets) {
  EXPECT_TRUE(ptsub::fill_tets(1, 1).empty());
  const auto fill = ptsub::fill_tets(2, 2);
  EXPECT_EQ(node_lists(fill), kP2Fill);
  for (int s = 0; s < 4; ++s)
    EXPECT_EQ(fill[static_cast<std::size_t>(s)].fill_slot, s);
  EXPECT_EQ(ptsub::fill_tets(3, 3).size(), 12u);
}

TEST(Connectivity, ChunkTets) {
  EXPECT_TRUE(ptsub::chunk_tets(2, 2).empty());
  EXPECT_TRUE(ptsub::chunk_tets(1, 4).empty());
  const Quad want{h(2, 1, 0), h(2, 1, 1), h(2, 0, 1), h(3, 1, 1)};
  EXPECT_EQ(node_lists(ptsub::chunk_tets(3, 3)), std::vector<Quad>{want});
  EXPECT_EQ(ptsub::chunk_tets(4, 4).size(), 3u);
}

TEST(Connectivity, LevelCountsMatchLoopCensus) {
  EXPECT_EQ(ptsub::level_tets(1, 1).size(), 1u);
  EXPECT_EQ(ptsub::level_tets(2, 2).size(), 7u);
  EXPECT_EQ(ptsub::level_tets(5, 5).size(), 61u);
  for (int i = 1; i <= 20; ++i) {
    const auto census = oracle::level_census(i);
    EXPECT_EQ(static_cast<std::int64_t>(ptsub::upright_tets(i, 20).size()), census[0]);
    EXPECT_EQ(static_cast<std::int64_t>(ptsub::fill_tets(i, 20).size()), census[1]);
    EXPECT_EQ(static_cast<std::int64_t>(ptsub::chunk_tets(i, 20).size()), census[2]);
    EXPECT_EQ(census[0] + census[1] + census[2], std::int64_t{i} * i * i - std::int64_t{i - 1} * (i - 1) * (i - 1));
    EXPECT_EQ(ptsub::level_tet_count(i), census[0] + census[1] + census[2]);
  }
}

TEST(Connectivity, LevelOrdering) {
  const auto tets = ptsub::level_tets(4, 4);
  auto rank = [](TetKind k) { return static_cast<int>(k); };
  EXPECT_TRUE(std::is_sorted(tets.begin(), tets.end(),
                             [&](const SubTet &a, const SubTet &b) { return rank(a.kind) < rank(b.kind); }));
}

TEST(Connectivity, RangeErrors) {
  EXPECT_THROW(ptsub::upright_tets(0, 3), ptsub::RangeError);
  EXPECT_THROW(ptsub::fill_tets(4, 3), ptsub::RangeError);
  EXPECT_THROW(ptsub::chunk_tets(-1, 3), ptsub::RangeError);
  EXPECT_THROW(ptsub::level_tets(4, 3), ptsub::RangeError);
  EXPECT_THROW(ptsub::generate(0), ptsub::OrderError);
}

TEST(Connectivity, GoldenP1P2) {
  const auto p1 = ptsub::generate(1, ptsub::OrientationPolicy::as_generated);
  EXPECT_EQ(node_lists(p1.tets), std::vector<Quad>{kP1});

  std::vector<SubTet> expected;
  auto add = [&](const Quad &q) {
    SubTet t;
    t.nodes = q;
    expected.push_back(t);
  };
  add(kP1);
  std::for_each(kP2Upright.begin(), kP2Upright.end(), add);
  std::for_each(kP2Fill.begin(), kP2Fill.end(), add);
  for (auto policy : {ptsub::OrientationPolicy::as_generated, ptsub::OrientationPolicy::positive}) {
    const auto p2 = ptsub::generate(2, policy);
    EXPECT_EQ(p2.tets.size(), 8u);
    EXPECT_EQ(vertex_sets(p2.tets), vertex_sets(expected));
  }
  EXPECT_EQ(ptsub::generate(4).tets.size(), 64u);
}

TEST(Connectivity, CountsUpTo20) {
  for (int n = 1; n <= 20; ++n) {
    const auto mesh = ptsub::generate(n);
    EXPECT_EQ(static_cast<std::int64_t>(mesh.tets.size()), std::int64_t{n} * n * n);
    std::map<int, std::int64_t> per_level;
    for (const auto &t : mesh.tets)
      ++per_level[t.level];
    for (int i = 1; i <= n; ++i)
      EXPECT_EQ(per_level[i], 3 * i * i - 3 * i + 1);
  }
}

TEST(Connectivity, NodeCoverAndEdgeLocality) {
  for (int n = 1; n <= 12; ++n) {
    const auto mesh = ptsub::generate(n);
    std::vector<bool> used(static_cast<std::size_t>(ptsub::node_count(n)), false);
    for (const auto &t : mesh.tets) {
      std::set<NodeId> distinct(t.nodes.begin(), t.nodes.end());
      ASSERT_EQ(distinct.size(), 4u);
      for (auto a : t.nodes) {
        used[static_cast<std::size_t>(a)] = true;
        const auto ca = ptsub::node_coords(ptsub::linear_to_node(a, n), n);
        for (auto b : t.nodes) {
          const auto cb = ptsub::node_coords(ptsub::linear_to_node(b, n), n);
          EXPECT_LE(std::abs(ca.x - cb.x), 1);
          EXPECT_LE(std::abs(ca.y - cb.y), 1);
          EXPECT_LE(std::abs(ca.z - cb.z), 1);
        }
      }
    }
    EXPECT_TRUE(std::all_of(used.begin(), used.end(), [](bool b) { return b; })) << "orphan node at N=" << n;
  }
}

TEST(Connectivity, Deterministic) {
  EXPECT_EQ(ptsub::generate(7), ptsub::generate(7));
  EXPECT_EQ(ptsub::generate(5, ptsub::OrientationPolicy::as_generated),
            ptsub::generate(5, ptsub::OrientationPolicy::as_generated));
}

TEST(Connectivity, PositivePolicyOnlySwapsLastTwo) {
  for (int n = 1; n <= 8; ++n) {
    const auto raw = ptsub::generate(n, ptsub::OrientationPolicy::as_generated);
    const auto pos = ptsub::generate(n, ptsub::OrientationPolicy::positive);
    ASSERT_EQ(raw.tets.size(), pos.tets.size());
    for (std::size_t t = 0; t < raw.tets.size(); ++t) {
      const auto &a = raw.tets[t];
      const auto &b = pos.tets[t];
      EXPECT_EQ(b.kind, a.kind);
      EXPECT_EQ(b.level, a.level);
      EXPECT_EQ(b.fill_slot, a.fill_slot);
      EXPECT_EQ(a.nodes[0], b.nodes[0]);
      EXPECT_EQ(a.nodes[1], b.nodes[1]);
      EXPECT_TRUE((a.nodes[2] == b.nodes[2] && a.nodes[3] == b.nodes[3]) ||
                  (a.nodes[2] == b.nodes[3] && a.nodes[3] == b.nodes[2]));
      EXPECT_EQ(ptsub::signed_volume6(b.nodes, n), 1);
    }
  }
}

// The four fill tets of P2 share the chosen diagonal and together bound the
// octahedron whose faces are the 8 triples of its vertices that avoid every
// antipodal pair.
TEST(Connectivity, P2Octahedron) {
  const auto fill = ptsub::fill_tets(2, 2);
  const NodeId a = h(1, 0, 0), b = h(2, 1, 1);
  for (const auto &t : fill) {
    EXPECT_NE(std::find(t.nodes.begin(), t.nodes.end(), a), t.nodes.end());
    EXPECT_NE(std::find(t.nodes.begin(), t.nodes.end(), b), t.nodes.end());
  }

  std::map<std::set<NodeId>, int> face_uses;
  for (const auto &t : fill)
    for (int skip = 0; skip < 4; ++skip) {
      std::set<NodeId> f;
      for (int v = 0; v < 4; ++v)
        if (v != skip)
          f.insert(t.nodes[static_cast<std::size_t>(v)]);
      ++face_uses[f];
    }
  std::set<std::set<NodeId>> hull;
  for (const auto &[f, uses] : face_uses)
    if (uses == 1)
      hull.insert(f);

  const std::vector<std::pair<NodeId, NodeId>> antipodal{
      {h(1, 0, 0), h(2, 1, 1)}, {h(1, 1, 0), h(2, 0, 1)}, {h(1, 0, 1), h(2, 1, 0)}};
  std::set<std::set<NodeId>> octahedron;
  for (int mask = 0; mask < 8; ++mask) {
    std::set<NodeId> f;
    for (int p = 0; p < 3; ++p)
      f.insert((mask >> p) & 1 ? antipodal[static_cast<std::size_t>(p)].second
                               : antipodal[static_cast<std::size_t>(p)].first);
    octahedron.insert(f);
  }
  EXPECT_EQ(hull.size(), 8u);
  EXPECT_EQ(hull, octahedron);
}

TEST(Geometry, SignedVolumeExamples) {
  EXPECT_EQ(ptsub::signed_volume6(kP1, 1), -1);
  const Quad swapped{kP1[0], kP1[1], kP1[3], kP1[2]};
  EXPECT_EQ(ptsub::signed_volume6(swapped, 1), 1);
  const Quad repeated{kP1[0], kP1[1], kP1[1], kP1[2]};
  EXPECT_EQ(ptsub::signed_volume6(repeated, 1), 0);

  // Cross-check against a Leibniz determinant on every generated tet.
  for (int n = 1; n <= 6; ++n)
    for (const auto &t : ptsub::generate(n, ptsub::OrientationPolicy::as_generated).tets) {
      std::array<oracle::P, 4> p;
      for (std::size_t v = 0; v < 4; ++v) {
        const auto node = ptsub::linear_to_node(t.nodes[v], n);
        p[v] = oracle::position({node.i, node.j, node.k}, n);
      }
      EXPECT_EQ(ptsub::signed_volume6(t.nodes, n), oracle::volume6(p));
    }
}

} // namespace
