#pragma once

// Command-line driver. Kept in a header so the test suite can call run()
// in-process with captured streams.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptsub/ptsub.hpp"

namespace ptsub::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kUsageError = 2,
  kIoError = 3,
  kValidationFailure = 4,
};

struct CliConfig {
  std::string subcommand;
  int order = 0;
  std::string format = "vtk";
  std::string out_path = "-";
  std::string in_path;
  bool paper_order = false;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  int pairwise_limit = 3;
  bool json_report = false;
  std::string field_path;
  std::string field_name = "field";
  std::vector<double> embedding;
  std::string permutation_path;
};

namespace detail {

class IoError : public Error {
public:
  using Error::Error;
};

inline std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Writes to a file, or to `stdout_stream` for "-".
template <typename Fn> void emit(const std::string &path, std::ostream &stdout_stream, Fn &&write) {
  if (path == "-") {
    write(stdout_stream);
    return;
  }
  std::ostringstream buffer;
  write(buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << buffer.str();
  if (!out.flush())
    throw IoError("failed writing '" + path + "'");
}

inline OrientationPolicy policy(const CliConfig &c) {
  return c.paper_order ? OrientationPolicy::as_generated : OrientationPolicy::positive;
}

inline std::vector<FieldData> load_fields(const CliConfig &c) {
  if (c.field_path.empty())
    return {};
  std::istringstream in(slurp(c.field_path));
  return {read_field(in, c.order, c.field_name)};
}

inline VtkOptions vtk_options(const CliConfig &c) {
  VtkOptions options;
  if (!c.embedding.empty())
    options.embedding = PhysicalEmbedding::from_flat(c.embedding);
  if (!c.permutation_path.empty()) {
    std::istringstream in(slurp(c.permutation_path));
    auto perm = read_permutation(in);
    check_permutation(perm, static_cast<std::size_t>(node_count(c.order)));
    options.permutation = std::move(perm);
  }
  return options;
}

inline int run_gen(const CliConfig &c, std::ostream &out) {
  const auto mesh = generate(c.order, policy(c));
  const auto fields = load_fields(c);
  if (c.format == "vtk") {
    const auto options = vtk_options(c);
    emit(c.out_path, out, [&](std::ostream &os) { write_vtk_legacy(os, mesh, fields, options); });
  } else if (c.format == "json") {
    emit(c.out_path, out, [&](std::ostream &os) { write_json(os, mesh, fields); });
  } else {
    emit(c.out_path, out, [&](std::ostream &os) { write_off_boundary(os, mesh); });
  }
  return kSuccess;
}

inline int run_validate(const CliConfig &c, std::ostream &out) {
  SubdivisionMesh mesh;
  if (!c.in_path.empty()) {
    std::istringstream in(slurp(c.in_path));
    mesh = read_json(in).mesh;
  } else {
    mesh = generate(c.order, policy(c));
  }
  ValidationOptions options;
  options.samples = c.samples;
  options.seed = c.seed;
  options.pairwise_max_order = c.pairwise_limit;
  const auto report = validate(mesh, options);
  if (c.json_report)
    out << to_json(report).dump(2) << '\n';
  else
    out << to_text(report);
  return report.passed() ? kSuccess : kValidationFailure;
}

inline int run_info(const CliConfig &c, std::ostream &out) {
  const auto mesh = generate(c.order, policy(c));
  std::vector<std::int64_t> per_level(static_cast<std::size_t>(c.order) + 1, 0);
  std::array<std::int64_t, 3> per_kind{};
  for (const auto &t : mesh.tets) {
    ++per_level[static_cast<std::size_t>(t.level)];
    ++per_kind[static_cast<std::size_t>(t.kind)];
  }
  out << "order: " << c.order << '\n';
  out << "nodes: " << mesh.nodes.size() << '\n';
  out << "tets: " << mesh.tets.size() << '\n';
  out << "per-level deltas:";
  for (int i = 1; i <= c.order; ++i)
    out << ' ' << per_level[static_cast<std::size_t>(i)];
  out << '\n';
  for (auto kind : {TetKind::upright, TetKind::fill, TetKind::chunk})
    out << to_string(kind) << ": " << per_kind[static_cast<std::size_t>(kind)] << '\n';
  out << "boundary triangles: " << 4 * std::int64_t{c.order} * c.order << '\n';
  return kSuccess;
}

inline int run_resample(const CliConfig &c, std::ostream &out) {
  const auto mesh = generate(c.order, policy(c));
  const auto fields = load_fields(c);
  const auto options = vtk_options(c);
  emit(c.out_path, out, [&](std::ostream &os) { write_vtk_legacy(os, mesh, fields, options); });
  return kSuccess;
}

} // namespace detail

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
  CliConfig c;
  CLI::App app{"Subdivide order-N Lagrangian tetrahedra into N^3 linear sub-tetrahedra"};
  app.require_subcommand(1);

  const auto add_order = [&](CLI::App *sub) {
    return sub->add_option("-n,--order", c.order, "Element order N (>= 1)")->check(CLI::Range(1, 1000));
  };
  const auto add_paper_order = [&](CLI::App *sub) {
    sub->add_flag("--paper-order", c.paper_order,
                  "Keep node order exactly as constructed instead of orienting every tet positively");
  };
  const auto add_field = [&](CLI::App *sub, bool required) {
    auto *opt = sub->add_option("--field", c.field_path,
                                "Nodal values in canonical node order (decimals or a JSON array)");
    opt->check(CLI::ExistingFile);
    if (required)
      opt->required();
    sub->add_option("--field-name", c.field_name, "Name of the field in the output")->capture_default_str();
  };
  const auto add_vtk_extras = [&](CLI::App *sub) {
    sub->add_option("--embedding", c.embedding,
                    "Physical corners h^0_00, h^N_00, h^N_N0, h^N_0N as 12 numbers (x y z each)")
        ->expected(12);
    sub->add_option("--permutation", c.permutation_path,
                    "Node ordering table: entry p is the canonical id written at output position p")
        ->check(CLI::ExistingFile);
  };

  auto *gen = app.add_subcommand("gen", "Generate a subdivision and write it to a file");
  add_order(gen)->required();
  gen->add_option("-f,--format", c.format, "Output format")
      ->check(CLI::IsMember({"vtk", "json", "off"}))
      ->capture_default_str();
  gen->add_option("-o,--out", c.out_path, "Output path, '-' for stdout")->capture_default_str();
  add_paper_order(gen);
  add_field(gen, false);
  add_vtk_extras(gen);

  auto *val = app.add_subcommand("validate", "Check volumes, watertightness, congruence and coverage");
  auto *val_order = add_order(val);
  auto *val_in = val->add_option("-i,--in", c.in_path, "Validate a JSON mesh document instead of generating one")
                     ->check(CLI::ExistingFile);
  val_order->excludes(val_in);
  val->add_option("--samples", c.samples, "Number of containment sample points")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}))
      ->capture_default_str();
  val->add_option("--seed", c.seed, "Sampler seed")->capture_default_str();
  val->add_option("--pairwise-limit", c.pairwise_limit, "Run exhaustive tet-tet tests up to this order")
      ->capture_default_str();
  val->add_flag("--json", c.json_report, "Print the report as JSON");
  add_paper_order(val);

  auto *info = app.add_subcommand("info", "Print node, tet and per-level counts");
  add_order(info)->required();
  add_paper_order(info);

  auto *res = app.add_subcommand("resample", "Attach a nodal field and write VTK with point data");
  add_order(res)->required();
  add_field(res, true);
  res->add_option("-o,--out", c.out_path, "Output path, '-' for stdout")->capture_default_str();
  add_paper_order(res);
  add_vtk_extras(res);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.subcommand == "validate" && c.in_path.empty() && c.order < 1) {
    err << "validate: either --order or --in is required\n";
    return kUsageError;
  }
  if (c.subcommand == "gen" && c.format != "vtk" && (!c.embedding.empty() || !c.permutation_path.empty())) {
    err << "gen: --embedding and --permutation apply to the vtk format only\n";
    return kUsageError;
  }
  if (c.subcommand == "gen" && c.format == "off" && !c.field_path.empty()) {
    err << "gen: the off format carries no fields\n";
    return kUsageError;
  }

  try {
    if (c.subcommand == "gen")
      return detail::run_gen(c, out);
    if (c.subcommand == "validate")
      return detail::run_validate(c, out);
    if (c.subcommand == "info")
      return detail::run_info(c, out);
    return detail::run_resample(c, out);
  } catch (const detail::IoError &e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

} // namespace ptsub::cli
