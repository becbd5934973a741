#pragma once

// Export and import of subdivision meshes and nodal fields.
//
//   VTK legacy ASCII unstructured grid, cell type 10 (linear tetrahedron)
//   OFF boundary surface
//   JSON mesh document, "format_version": 1
//   nodal field input: whitespace/newline separated decimals or a JSON array
//
// Subdivision adds no nodes, so a nodal field on the high-order element maps
// onto the sub-tet mesh unchanged.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptsub/connectivity.hpp"
#include "ptsub/errors.hpp"
#include "ptsub/lattice.hpp"
#include "ptsub/validation.hpp"

namespace ptsub {

inline constexpr int kJsonFormatVersion = 1;
inline constexpr int kVtkTetraCellType = 10;

struct FieldData {
  std::string name;
  std::vector<double> values;

  friend bool operator==(const FieldData &, const FieldData &) = default;
};

using Point3 = std::array<double, 3>;

/// Affine image of the reference element, given by the physical positions of
/// the corners h^0_{0,0}, h^N_{0,0}, h^N_{N,0}, h^N_{0,N}.
class PhysicalEmbedding {
public:
  explicit PhysicalEmbedding(const std::array<Point3, 4> &corners) : corners_(corners) {
    for (const auto &c : corners_)
      for (double v : c)
        if (!std::isfinite(v))
          throw GeometryError("embedding corner has a non-finite coordinate");
    const auto e = [&](int a, int d) { return corners_[a][d] - corners_[0][d]; };
    const double det = e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)) -
                       e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0)) +
                       e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0));
    if (det == 0.0 || !std::isfinite(det))
      throw GeometryError("embedding corners are affinely dependent (zero volume)");
  }

  /// From 12 numbers: four corners, xyz each.
  static PhysicalEmbedding from_flat(std::span<const double> values) {
    if (values.size() != 12)
      throw GeometryError("embedding needs 12 values (4 corners x 3), got " + std::to_string(values.size()));
    std::array<Point3, 4> corners;
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t d = 0; d < 3; ++d)
        corners[c][d] = values[3 * c + d];
    return PhysicalEmbedding(corners);
  }

  Point3 map(const NodeIndex &n, int order) const {
    const auto w = node_barycentric(n, order);
    Point3 p{0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < 4; ++c) {
      if (w[c].num() == 0)
        continue;
      const double wc = w[c].to_double();
      for (std::size_t d = 0; d < 3; ++d)
        p[d] += wc * corners_[c][d];
    }
    return p;
  }

  const std::array<Point3, 4> &corners() const { return corners_; }

private:
  std::array<Point3, 4> corners_;
};

// ---------------------------------------------------------------------------
// Permutations between the canonical node order and external conventions.
//
// A table `perm` of length node_count(N) lists, for each position p of the
// external order, the canonical id stored there: external[p] = canonical[perm[p]].

using Permutation = std::vector<NodeId>;

inline void check_permutation(std::span<const NodeId> perm, std::size_t expected_size) {
  if (perm.size() != expected_size)
    throw ConfigError("permutation table has " + std::to_string(perm.size()) + " entries, expected " +
                      std::to_string(expected_size));
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p = 0; p < perm.size(); ++p) {
    const auto id = perm[p];
    if (id < 0 || static_cast<std::size_t>(id) >= perm.size())
      throw ConfigError("permutation entry " + std::to_string(p) + " = " + std::to_string(id) + " out of range");
    if (seen[static_cast<std::size_t>(id)])
      throw ConfigError("permutation is not a bijection: id " + std::to_string(id) + " repeats");
    seen[static_cast<std::size_t>(id)] = true;
  }
}

inline Permutation invert_permutation(std::span<const NodeId> perm) {
  check_permutation(perm, perm.size());
  Permutation inverse(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p)
    inverse[static_cast<std::size_t>(perm[p])] = static_cast<NodeId>(p);
  return inverse;
}

/// Reorder per-node data: out[p] = data[perm[p]].
template <typename T>
std::vector<T> apply_ordering_permutation(std::span<const T> data, std::span<const NodeId> perm) {
  check_permutation(perm, data.size());
  std::vector<T> out;
  out.reserve(data.size());
  for (auto id : perm)
    out.push_back(data[static_cast<std::size_t>(id)]);
  return out;
}

/// Rewrite tet node references into the external numbering of `perm`.
inline std::vector<SubTet> apply_ordering_permutation(std::span<const SubTet> tets, std::span<const NodeId> perm,
                                                      int order) {
  check_permutation(perm, static_cast<std::size_t>(node_count(order)));
  const auto inverse = invert_permutation(perm);
  std::vector<SubTet> out(tets.begin(), tets.end());
  for (auto &t : out)
    for (auto &id : t.nodes)
      id = inverse.at(static_cast<std::size_t>(id));
  return out;
}

/// Newline/whitespace separated integers or a JSON array of integers.
inline Permutation read_permutation(std::istream &in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  const auto first = text.find_first_not_of(" \t\r\n");
  Permutation perm;
  if (first != std::string::npos && text[first] == '[') {
    try {
      perm = nlohmann::json::parse(text).get<Permutation>();
    } catch (const nlohmann::json::exception &e) {
      throw ConfigError(std::string("permutation table: ") + e.what());
    }
    return perm;
  }
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '\n')
      ++line;
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    NodeId v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() ||
        (ptr != text.data() + text.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
      throw ConfigError("permutation table: bad integer on line " + std::to_string(line));
    perm.push_back(v);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return perm;
}

// ---------------------------------------------------------------------------

namespace detail {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), ptr};
}

inline void check_fields(std::span<const FieldData> fields, int order) {
  const auto expected = static_cast<std::size_t>(node_count(order));
  for (const auto &f : fields) {
    if (f.values.size() != expected)
      throw InputError("field '" + f.name + "' has " + std::to_string(f.values.size()) +
                       " values, expected " + std::to_string(expected));
    for (double v : f.values)
      if (!std::isfinite(v))
        throw InputError("field '" + f.name + "' contains a non-finite value");
  }
}

inline std::string vtk_name(std::string_view name) {
  std::string out;
  for (char c : name)
    out += std::isspace(static_cast<unsigned char>(c)) ? '_' : c;
  return out.empty() ? "field" : out;
}

} // namespace detail

struct VtkOptions {
  std::optional<PhysicalEmbedding> embedding;
  std::optional<Permutation> permutation; ///< external point order, see apply_ordering_permutation
};

inline void write_vtk_legacy(std::ostream &out, const SubdivisionMesh &mesh, std::span<const FieldData> fields = {},
                             const VtkOptions &options = {}) {
  const int order = mesh.order;
  detail::check_fields(fields, order);
  const auto count = static_cast<std::size_t>(node_count(order));

  std::vector<NodeId> point_node(count); // canonical id of each output point
  for (std::size_t p = 0; p < count; ++p)
    point_node[p] = static_cast<NodeId>(p);
  std::span<const SubTet> tets = mesh.tets;
  std::vector<SubTet> remapped;
  if (options.permutation) {
    check_permutation(*options.permutation, count);
    point_node = *options.permutation;
    remapped = apply_ordering_permutation(tets, *options.permutation, order);
    tets = remapped;
  }

  out << "# vtk DataFile Version 3.0\n";
  out << "order-" << order << " tetrahedron subdivision\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << count << " double\n";
  for (auto id : point_node) {
    const auto node = linear_to_node(id, order);
    Point3 p;
    if (options.embedding) {
      p = options.embedding->map(node, order);
    } else {
      const auto c = node_coords(node, order);
      p = {static_cast<double>(c.x), static_cast<double>(c.y), static_cast<double>(c.z)};
    }
    out << detail::format_double(p[0]) << ' ' << detail::format_double(p[1]) << ' '
        << detail::format_double(p[2]) << '\n';
  }

  out << "CELLS " << tets.size() << ' ' << 5 * tets.size() << '\n';
  for (const auto &t : tets)
    out << "4 " << t.nodes[0] << ' ' << t.nodes[1] << ' ' << t.nodes[2] << ' ' << t.nodes[3] << '\n';
  out << "CELL_TYPES " << tets.size() << '\n';
  for (std::size_t t = 0; t < tets.size(); ++t)
    out << kVtkTetraCellType << '\n';

  out << "CELL_DATA " << tets.size() << '\n';
  out << "SCALARS level int 1\nLOOKUP_TABLE default\n";
  for (const auto &t : tets)
    out << t.level << '\n';
  out << "SCALARS kind int 1\nLOOKUP_TABLE default\n";
  for (const auto &t : tets)
    out << static_cast<int>(t.kind) << '\n';

  if (!fields.empty()) {
    out << "POINT_DATA " << count << '\n';
    for (const auto &f : fields) {
      out << "SCALARS " << detail::vtk_name(f.name) << " double 1\nLOOKUP_TABLE default\n";
      for (auto id : point_node)
        out << detail::format_double(f.values[static_cast<std::size_t>(id)]) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

struct MeshDocument {
  SubdivisionMesh mesh;
  std::vector<FieldData> fields;

  friend bool operator==(const MeshDocument &, const MeshDocument &) = default;
};

inline nlohmann::json to_json(const SubdivisionMesh &mesh, std::span<const FieldData> fields = {}) {
  using nlohmann::json;
  detail::check_fields(fields, mesh.order);
  json nodes = json::array();
  for (std::size_t id = 0; id < mesh.nodes.size(); ++id) {
    const auto &n = mesh.nodes[id];
    const auto c = node_coords(n, mesh.order);
    nodes.push_back({{"id", id}, {"i", n.i}, {"j", n.j}, {"k", n.k}, {"x", c.x}, {"y", c.y}, {"z", c.z}});
  }
  json tets = json::array();
  for (const auto &t : mesh.tets) {
    json jt = {{"nodes", t.nodes}, {"kind", to_string(t.kind)}, {"level", t.level}};
    if (t.fill_slot)
      jt["fill_slot"] = *t.fill_slot;
    tets.push_back(std::move(jt));
  }
  json doc = {{"format_version", kJsonFormatVersion},
              {"order", mesh.order},
              {"orientation", to_string(mesh.orientation)},
              {"nodes", std::move(nodes)},
              {"tets", std::move(tets)}};
  if (!fields.empty()) {
    json jf = json::array();
    for (const auto &f : fields)
      jf.push_back({{"name", f.name}, {"values", f.values}});
    doc["fields"] = std::move(jf);
  }
  return doc;
}

inline void write_json(std::ostream &out, const SubdivisionMesh &mesh, std::span<const FieldData> fields = {}) {
  out << to_json(mesh, fields).dump(1) << '\n';
}

namespace detail {

class JsonReader {
public:
  const nlohmann::json &member(const nlohmann::json &obj, const std::string &key, const std::string &path) const {
    if (!obj.is_object())
      fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
      fail(path + "/" + key, "missing");
    return *it;
  }

  template <typename T> T get(const nlohmann::json &value, const std::string &path) const {
    if constexpr (std::is_integral_v<T>) {
      if (!value.is_number_integer())
        fail(path, "expected an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number())
        fail(path, "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string())
        fail(path, "expected a string");
    }
    return value.get<T>();
  }

  const nlohmann::json &array(const nlohmann::json &value, const std::string &path) const {
    if (!value.is_array())
      fail(path, "expected an array");
    return value;
  }

  [[noreturn]] static void fail(const std::string &path, const std::string &what) {
    throw ParseError("mesh document at " + (path.empty() ? std::string("/") : path) + ": " + what);
  }
};

} // namespace detail

inline MeshDocument from_json(const nlohmann::json &doc) {
  detail::JsonReader r;
  MeshDocument out;
  auto &mesh = out.mesh;

  const auto version = r.get<int>(r.member(doc, "format_version", ""), "/format_version");
  if (version != kJsonFormatVersion)
    r.fail("/format_version", "unsupported version " + std::to_string(version));
  mesh.order = r.get<int>(r.member(doc, "order", ""), "/order");
  if (mesh.order < 1)
    r.fail("/order", "order must be at least 1");

  const auto orientation = r.get<std::string>(r.member(doc, "orientation", ""), "/orientation");
  if (orientation == "positive")
    mesh.orientation = OrientationPolicy::positive;
  else if (orientation == "as-generated")
    mesh.orientation = OrientationPolicy::as_generated;
  else
    r.fail("/orientation", "unknown policy '" + orientation + "'");

  const auto &nodes = r.array(r.member(doc, "nodes", ""), "/nodes");
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto path = "/nodes/" + std::to_string(id);
    const auto &jn = nodes[id];
    if (r.get<NodeId>(r.member(jn, "id", path), path + "/id") != static_cast<NodeId>(id))
      r.fail(path + "/id", "ids must be consecutive from 0");
    NodeIndex n{r.get<int>(r.member(jn, "i", path), path + "/i"), r.get<int>(r.member(jn, "j", path), path + "/j"),
                r.get<int>(r.member(jn, "k", path), path + "/k")};
    if (!is_valid_node(n, mesh.order))
      r.fail(path, "node " + to_string(n) + " is outside the order-" + std::to_string(mesh.order) + " lattice");
    const auto c = node_coords(n, mesh.order);
    const LatticeCoords stored{r.get<std::int64_t>(r.member(jn, "x", path), path + "/x"),
                               r.get<std::int64_t>(r.member(jn, "y", path), path + "/y"),
                               r.get<std::int64_t>(r.member(jn, "z", path), path + "/z")};
    if (stored != c)
      r.fail(path, "coordinates do not match the lattice embedding of " + to_string(n));
    mesh.nodes.push_back(n);
  }

  const auto &tets = r.array(r.member(doc, "tets", ""), "/tets");
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const auto path = "/tets/" + std::to_string(t);
    const auto &jt = tets[t];
    const auto &jnodes = r.array(r.member(jt, "nodes", path), path + "/nodes");
    if (jnodes.size() != 4)
      r.fail(path + "/nodes", "expected 4 node ids");
    SubTet tet;
    for (std::size_t v = 0; v < 4; ++v)
      tet.nodes[v] = r.get<NodeId>(jnodes[v], path + "/nodes/" + std::to_string(v));
    const auto kind = r.get<std::string>(r.member(jt, "kind", path), path + "/kind");
    if (kind == "upright")
      tet.kind = TetKind::upright;
    else if (kind == "fill")
      tet.kind = TetKind::fill;
    else if (kind == "chunk")
      tet.kind = TetKind::chunk;
    else
      r.fail(path + "/kind", "unknown kind '" + kind + "'");
    tet.level = r.get<int>(r.member(jt, "level", path), path + "/level");
    if (jt.contains("fill_slot"))
      tet.fill_slot = r.get<int>(jt["fill_slot"], path + "/fill_slot");
    mesh.tets.push_back(tet);
  }

  if (doc.contains("fields")) {
    const auto &fields = r.array(doc["fields"], "/fields");
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto path = "/fields/" + std::to_string(f);
      FieldData field;
      field.name = r.get<std::string>(r.member(fields[f], "name", path), path + "/name");
      const auto &values = r.array(r.member(fields[f], "values", path), path + "/values");
      for (std::size_t v = 0; v < values.size(); ++v)
        field.values.push_back(r.get<double>(values[v], path + "/values/" + std::to_string(v)));
      out.fields.push_back(std::move(field));
    }
    try {
      detail::check_fields(out.fields, mesh.order);
    } catch (const InputError &e) {
      r.fail("/fields", e.what());
    }
  }
  return out;
}

/// Parses a mesh document; errors carry the byte offset or JSON path.
inline MeshDocument read_json(std::istream &in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError("mesh document: " + std::string(e.what()));
  }
  return from_json(doc);
}

// ---------------------------------------------------------------------------

/// Boundary triangles as an OFF surface, outward oriented, vertices restricted
/// to boundary nodes and renumbered densely in canonical order.
inline void write_off_boundary(std::ostream &out, const SubdivisionMesh &mesh) {
  const auto incidence = build_face_incidence(mesh);
  const auto pairing = check_face_pairing(mesh, incidence);
  const auto congruence = check_boundary_congruence(mesh, incidence);
  if (!pairing.passed || !congruence.passed) {
    const auto &bad = pairing.passed ? congruence : pairing;
    throw InputError("mesh is not watertight (" + bad.name + ": " +
                     (bad.details.empty() ? std::string("failed") : bad.details.front()) +
                     "); run validation for the full report");
  }
  const int order = mesh.order;
  std::vector<std::array<NodeId, 3>> triangles;
  std::map<NodeId, std::size_t> dense;
  for (const auto &[face, uses] : incidence) {
    if (uses.size() != 1)
      continue;
    const auto &tet = mesh.tets[uses.front().tet];
    const auto opposite = tet.nodes[static_cast<std::size_t>(uses.front().local_face)];
    std::array<NodeId, 3> tri = face;
    std::array<Vec3, 4> p;
    for (std::size_t v = 0; v < 3; ++v)
      p[v] = to_vec(node_coords(linear_to_node(tri[v], order), order));
    p[3] = to_vec(node_coords(linear_to_node(opposite, order), order));
    // Outward: the opposite node lies on the negative side of the face.
    if (orient3d(p[0], p[1], p[2], p[3]) > 0)
      std::swap(tri[1], tri[2]);
    triangles.push_back(tri);
    for (auto id : tri)
      dense.emplace(id, 0);
  }
  std::size_t next = 0;
  for (auto &[id, index] : dense)
    index = next++;

  out << "OFF\n" << dense.size() << ' ' << triangles.size() << " 0\n";
  for (const auto &[id, index] : dense) {
    const auto c = node_coords(linear_to_node(id, order), order);
    out << c.x << ' ' << c.y << ' ' << c.z << '\n';
  }
  for (const auto &tri : triangles)
    out << "3 " << dense.at(tri[0]) << ' ' << dense.at(tri[1]) << ' ' << dense.at(tri[2]) << '\n';
}

// ---------------------------------------------------------------------------

/// Nodal values in canonical id order, as decimals separated by whitespace or
/// as a JSON array. Lines starting with '#' are comments in the plain form.
inline FieldData read_field(std::istream &in, int order, std::string name = "field") {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  FieldData field{std::move(name), {}};
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      const auto doc = nlohmann::json::parse(text);
      for (std::size_t v = 0; v < doc.size(); ++v) {
        if (!doc[v].is_number())
          throw ParseError("field: entry " + std::to_string(v) + " is not a number");
        field.values.push_back(doc[v].get<double>());
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("field: ") + e.what());
    }
  } else {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view line(text.data() + pos, end - pos);
      ++line_no;
      pos = end + 1;
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      std::size_t p = 0;
      while (p < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[p]))) {
          ++p;
          continue;
        }
        double v = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + p, line.data() + line.size(), v);
        if (ec != std::errc() ||
            (ptr != line.data() + line.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
          throw ParseError("field: bad number on line " + std::to_string(line_no));
        field.values.push_back(v);
        p = static_cast<std::size_t>(ptr - line.data());
      }
    }
  }
  const auto expected = static_cast<std::size_t>(node_count(order));
  if (field.values.size() != expected)
    throw InputError("field has " + std::to_string(field.values.size()) + " values, expected " +
                     std::to_string(expected) + " for order " + std::to_string(order));
  for (double v : field.values)
    if (!std::isfinite(v))
      throw InputError("field contains a non-finite value");
  return field;
}

} // namespace ptsub
