#include "unknot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "unknot/analysis.hpp"
#include "unknot/arrangement.hpp"
#include "unknot/error.hpp"
#include "unknot/model_surface.hpp"
#include "unknot/serialize.hpp"
#include "unknot/shrinker.hpp"
#include "unknot/tree.hpp"

namespace unknot {
namespace {

namespace fs = std::filesystem;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool json = false;
};

// Validation failed after the command itself ran fine.
struct ValidationFailure {};

Json with_schema(Json j) {
  j["schema"] = kSchema;
  return j;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << text;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

TriMesh load_obj(const std::string& path) {
  if (!fs::exists(path)) throw InvalidInput("no such file: " + path);
  return read_obj(fs::path(path));
}

struct GenerateArgs {
  std::string tree;
  int genus = 0;
  std::optional<VertexId> root;
  int resolution = 64;
  double shrink = 0.35;
  bool no_symmetric = false;
  bool smooth = false;
  std::string output;
};

void cmd_generate(const GenerateArgs& a, const Globals& g, std::ostream& out) {
  ModelSurfaceSpec spec;
  spec.tree = parse_tree(a.tree);
  spec.genus = a.genus;
  spec.root = a.root;
  spec.resolution = a.resolution;
  spec.shrink = a.shrink;
  spec.symmetric = !a.no_symmetric;
  spec.smooth_joins = a.smooth;
  const ModelSurface surface = build_model_surface(spec);

  const fs::path obj(a.output);
  fs::path sidecar = obj;
  sidecar.replace_extension(".json");
  {
    std::ofstream f(obj, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + obj.string());
    write_obj(f, surface.mesh);
  }
  write_text_file(sidecar, dump(model_sidecar(spec, surface)));

  if (g.json) {
    out << dump(with_schema({{"command", "generate"},
                             {"obj", obj.string()},
                             {"sidecar", sidecar.string()},
                             {"vertices", surface.mesh.vertices.size()},
                             {"triangles", surface.mesh.triangles.size()},
                             {"tree_code", ahu_code(spec.tree).code},
                             {"genus", spec.genus}}));
  } else {
    out << "wrote " << obj.string() << " (" << surface.mesh.vertices.size() << " vertices, "
        << surface.mesh.triangles.size() << " triangles)\n"
        << "wrote " << sidecar.string() << "\n";
  }
}

void cmd_analyze(const std::string& path, double radius, const Globals& g, std::ostream& out) {
  const TriMesh m = load_obj(path);
  const BallDomain ball{radius};
  const ValidationReport report = validate_properly_embedded(m, ball);
  std::optional<Signature> sig;
  std::optional<std::pair<int, int>> gb;
  if (report.manifold && report.connected && report.orientable) gb = genus_and_boundary(m);
  if (report.properly_embedded) sig = isotopy_signature(m, ball, g.seed);

  if (g.json) {
    Json j = {{"command", "analyze"}, {"mesh", path}, {"ball_radius", radius}, {"validation", to_json(report)}};
    j["genus"] = gb ? Json(gb->first) : Json(nullptr);
    j["boundary_loops"] = gb ? Json(gb->second) : Json(nullptr);
    j["signature"] = sig ? to_json(*sig) : Json(nullptr);
    out << dump(with_schema(j));
  } else {
    out << "properly embedded: " << yes_no(report.properly_embedded) << "\n"
        << "manifold: " << yes_no(report.manifold) << "\n"
        << "connected: " << yes_no(report.connected) << "\n"
        << "orientable: " << yes_no(report.orientable) << "\n"
        << "self-intersecting: " << yes_no(report.self_intersecting) << "\n"
        << "boundary sphericity error: " << report.boundary_error << "\n"
        << "interior clearance: " << report.interior_clearance << "\n";
    for (const auto& o : report.offending_items) {
      out << "offending " << o.kind << ": " << o.indices.size() << " index(es)\n";
    }
    if (gb) out << "genus: " << gb->first << "\nboundary loops: " << gb->second << "\n";
    if (sig) out << "boundary tree: " << sig->boundary_tree.code << "\nsignature: " << sig->to_string() << "\n";
  }
  if (!report.properly_embedded) throw ValidationFailure{};
}

void cmd_boundary_graph(const std::string& path, const std::string& dot, double radius, const Globals& g,
                        std::ostream& out) {
  std::optional<Tree> tree;
  std::string source;
  if (fs::path(path).extension() == ".jsonl") {
    std::ifstream f(path);
    if (!f) throw InvalidInput("no such file: " + path);
    SphereGraphOptions options;
    options.seed = g.seed;
    tree = sphere_boundary_graph(read_loops_jsonl(f), options);
    source = "loops";
  } else {
    const TriMesh m = load_obj(path);
    if (!validate_properly_embedded(m, {radius}).properly_embedded) {
      if (g.json) {
        out << dump(with_schema({{"command", "boundary-graph"}, {"input", path}, {"error", "not properly embedded"}}));
      } else {
        out << "mesh is not properly embedded; run analyze for details\n";
      }
      throw ValidationFailure{};
    }
    tree = boundary_graph_of_surface(m, {radius}, g.seed);
    source = "mesh";
  }
  const std::string code = ahu_code(*tree).code;
  if (!dot.empty()) {
    if (dot == "-") {
      out << tree->graph().to_dot("boundary_graph");
    } else {
      write_text_file(dot, tree->graph().to_dot("boundary_graph"));
    }
  }
  if (g.json) {
    out << dump(with_schema({{"command", "boundary-graph"},
                             {"input", path},
                             {"source", source},
                             {"graph", to_json(tree->graph())},
                             {"is_tree", true},
                             {"tree", code}}));
  } else if (dot != "-") {
    out << "vertices: " << tree->vertex_count() << "\nedges: " << tree->graph().edge_count() << "\ntree: " << code
        << "\n";
  }
}

void cmd_isotopy(const std::string& a, const std::string& b, double radius, const Globals& g, std::ostream& out) {
  const TriMesh ma = load_obj(a), mb = load_obj(b);
  const BallDomain ball{radius};
  const ValidationReport ra = validate_properly_embedded(ma, ball), rb = validate_properly_embedded(mb, ball);
  if (!ra.properly_embedded || !rb.properly_embedded) {
    if (g.json) {
      out << dump(with_schema({{"command", "isotopy-check"},
                               {"a", {{"mesh", a}, {"properly_embedded", ra.properly_embedded}}},
                               {"b", {{"mesh", b}, {"properly_embedded", rb.properly_embedded}}},
                               {"result", nullptr}}));
    } else {
      out << "cannot decide: " << (ra.properly_embedded ? b : a) << " is not properly embedded\n";
    }
    throw ValidationFailure{};
  }
  const Signature sa = isotopy_signature(ma, ball, g.seed), sb = isotopy_signature(mb, ball, g.seed);
  const bool same = sa == sb;
  if (g.json) {
    out << dump(with_schema({{"command", "isotopy-check"},
                             {"a", {{"mesh", a}, {"signature", to_json(sa)}}},
                             {"b", {{"mesh", b}, {"signature", to_json(sb)}}},
                             {"result", same},
                             {"note", kIsotopyHypothesisNote}}));
  } else {
    out << a << ": " << sa.to_string() << "\n"
        << b << ": " << sb.to_string() << "\n"
        << (same ? "equivalent" : "NOT equivalent") << "\n"
        << "note: " << kIsotopyHypothesisNote << "\n";
  }
}

void cmd_enumerate(int n, const Globals& g, std::ostream& out) {
  const auto codes = enumerate_free_trees(n);
  const Rational bound = cayley_lower_bound(n);
  if (g.json) {
    Json list = Json::array();
    for (const auto& c : codes) list.push_back(c.code);
    out << dump(with_schema({{"command", "enumerate-trees"},
                             {"n", n},
                             {"count", codes.size()},
                             {"cayley_lower_bound", bound.str()},
                             {"trees", list}}));
  } else {
    for (const auto& c : codes) out << c.code << "\n";
    out << "count: " << codes.size() << "\ncayley lower bound: " << bound.str() << "\n";
  }
}

struct ShrinkerArgs {
  std::string builtin;
  std::string mesh;
  double rmin = 0;
  double rmax = 0;
  std::optional<int> steps;
  int resolution = 64;
  std::optional<double> extent;
  std::string export_loops;
};

void cmd_shrinker(const ShrinkerArgs& a, const Globals& g, std::ostream& out) {
  TriMesh m;
  std::string source;
  if (!a.builtin.empty()) {
    const auto kind = parse_shrinker_kind(a.builtin);
    if (!kind) throw InvalidInput("unknown builtin shrinker: " + a.builtin);
    const double extent = a.extent.value_or(std::max(16.0, 1.25 * a.rmax + 1));
    m = builtin_shrinker(*kind, extent, a.resolution);
    source = a.builtin;
  } else {
    m = load_obj(a.mesh);
    source = a.mesh;
  }
  const int steps = a.steps.value_or(default_slice_steps(a.rmin, a.rmax));
  InfinityOptions options;
  options.seed = g.seed;
  options.threads = g.threads;
  const StabilizationReport rep = graph_at_infinity(m, a.rmin, a.rmax, steps, options);

  if (!a.export_loops.empty()) {
    for (std::size_t i = 0; i < rep.radii_tested.size(); ++i) {
      SphereGraphOptions so;
      so.seed = g.seed;
      const SliceResult s = slice_graph(m, rep.radii_tested[i], so);
      std::ofstream f(a.export_loops + "_" + std::to_string(i) + ".jsonl", std::ios::binary);
      if (!f) throw InvalidInput("cannot write loops with prefix " + a.export_loops);
      write_loops_jsonl(f, s.loops);
    }
  }

  if (g.json) {
    Json j = to_json(rep);
    j["command"] = "shrinker-graph";
    j["source"] = source;
    j["tree"] = j["graph_at_infinity"];
    out << dump(with_schema(j));
  } else {
    for (std::size_t i = 0; i < rep.radii_tested.size(); ++i) {
      out << "R=" << rep.radii_tested[i] << " tree=" << rep.codes[i] << "\n";
    }
    out << "stabilized: " << yes_no(rep.stabilized) << "\n";
    if (rep.stabilized) {
      out << "graph at infinity: " << rep.graph_at_infinity->code << " ("
          << rep.graph_at_infinity->code.size() / 2 << " vertices)\n"
          << "R0 estimate: " << *rep.r0_estimate << "\n";
    }
    out << "truncation radius: " << rep.truncation_radius << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model surfaces, boundary graphs and isotopy signatures for surfaces in the ball", "unknot-kit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for reference points and slice jitter")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable JSON on stdout");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build a model surface and write OBJ + JSON sidecar");
  generate->add_option("--tree", gen.tree, "Tree in nested-parentheses form")->required();
  generate->add_option("--genus", gen.genus, "Genus")->check(CLI::NonNegativeNumber)->capture_default_str();
  generate->add_option("--root", gen.root, "Root vertex (default: a tree centre)");
  generate->add_option("--resolution", gen.resolution, "Segments per circle")->capture_default_str();
  generate->add_option("--shrink", gen.shrink, "Cap scale per generation")->capture_default_str();
  generate->add_flag("--no-symmetric", gen.no_symmetric, "Drop the y = 0 mirror symmetry");
  generate->add_flag("--smooth", gen.smooth, "Laplacian step on the stitch rings");
  generate->add_option("-o,--output", gen.output, "Output OBJ path")->required();

  std::string analyze_path;
  double radius = 1.0;
  auto* analyze = app.add_subcommand("analyze", "Validate a mesh and print its isotopy signature");
  analyze->add_option("obj", analyze_path, "Mesh")->required();
  analyze->add_option("--ball-radius", radius, "Radius of the ball")->capture_default_str();

  std::string graph_input, dot_path;
  auto* bgraph = app.add_subcommand("boundary-graph", "Boundary graph of a mesh or of a JSON-lines loop set");
  bgraph->add_option("input", graph_input, "OBJ mesh or .jsonl loops")->required();
  bgraph->add_option("--dot", dot_path, "Write DOT here ('-' for stdout)");
  bgraph->add_option("--ball-radius", radius, "Radius of the ball")->capture_default_str();

  std::string iso_a, iso_b;
  auto* iso = app.add_subcommand("isotopy-check", "Compare the isotopy signatures of two meshes");
  iso->add_option("a", iso_a, "First mesh")->required();
  iso->add_option("b", iso_b, "Second mesh")->required();
  iso->add_option("--ball-radius", radius, "Radius of the ball")->capture_default_str();

  int enum_n = 0;
  auto* enumerate = app.add_subcommand("enumerate-trees", "List unlabelled trees on n vertices");
  enumerate->add_option("n", enum_n, "Vertex count (1..12)")->required();

  ShrinkerArgs sh;
  auto* shrink = app.add_subcommand("shrinker-graph", "Graph at infinity of a builtin or given mesh");
  auto* b_opt = shrink->add_option("--builtin", sh.builtin, "plane, sphere2 or cylinder2");
  auto* m_opt = shrink->add_option("--mesh", sh.mesh, "OBJ mesh");
  b_opt->excludes(m_opt);
  shrink->add_option("--rmin", sh.rmin, "Smallest slice radius")->required();
  shrink->add_option("--rmax", sh.rmax, "Largest slice radius")->required();
  shrink->add_option("--steps", sh.steps, "Number of radii (default: ratio about 1.3)");
  shrink->add_option("--resolution", sh.resolution, "Builtin mesh resolution")->capture_default_str();
  shrink->add_option("--extent", sh.extent, "Builtin truncation (default max(16, 1.25 rmax + 1))");
  shrink->add_option("--export-loops", sh.export_loops, "Write slice loops to <prefix>_<i>.jsonl");

  for (auto* sub : {generate, analyze, bgraph, iso, enumerate, shrink}) {
    sub->add_flag("--json", g.json, "Machine-readable JSON on stdout");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      cmd_generate(gen, g, out);
    } else if (*analyze) {
      cmd_analyze(analyze_path, radius, g, out);
    } else if (*bgraph) {
      cmd_boundary_graph(graph_input, dot_path, radius, g, out);
    } else if (*iso) {
      cmd_isotopy(iso_a, iso_b, radius, g, out);
    } else if (*enumerate) {
      cmd_enumerate(enum_n, g, out);
    } else if (*shrink) {
      if (sh.builtin.empty() && sh.mesh.empty()) {
        err << "shrinker-graph: give --builtin or --mesh\n";
        return kExitUsage;
      }
      cmd_shrinker(sh, g, out);
    }
  } catch (const ValidationFailure&) {
    return kExitInvalid;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const TopologyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace unknot
