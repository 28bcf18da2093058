#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "unknot/analysis.hpp"
#include "unknot/arrangement.hpp"
#include "unknot/error.hpp"
#include "unknot/model_surface.hpp"
#include "unknot/serialize.hpp"
#include "unknot/shrinker.hpp"

namespace py = pybind11;
using namespace unknot;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ModelSurfaceSpec make_spec(const std::string& tree, int genus, std::optional<VertexId> root, int resolution,
                           double shrink, bool symmetric, bool smooth_joins) {
  ModelSurfaceSpec s;
  s.tree = parse_tree(tree);
  s.genus = genus;
  s.root = root;
  s.resolution = resolution;
  s.shrink = shrink;
  s.symmetric = symmetric;
  s.smooth_joins = smooth_joins;
  return s;
}

std::vector<Edge> edge_list(const Multigraph& g) { return g.edges(); }

TriMesh mesh_from(const std::vector<std::array<double, 3>>& vertices, const std::vector<Triangle>& triangles) {
  TriMesh m;
  for (const auto& v : vertices) m.add_vertex({v[0], v[1], v[2]});
  for (const auto& t : triangles) {
    for (Index i : t) {
      if (i >= m.vertices.size()) throw InvalidInput("triangle index out of range");
    }
  }
  m.triangles = triangles;
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model surfaces, boundary graphs and isotopy signatures for surfaces in the ball";

  auto base = py::register_exception<Error>(m, "UnknotError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<TopologyError>(m, "TopologyError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());

  py::class_<TriMesh>(m, "TriMesh")
      .def(py::init(&mesh_from), py::arg("vertices"), py::arg("triangles"))
      .def_property_readonly("vertices",
                             [](const TriMesh& t) {
                               std::vector<std::array<double, 3>> out;
                               out.reserve(t.vertices.size());
                               for (const auto& p : t.vertices) out.push_back({p.x, p.y, p.z});
                               return out;
                             })
      .def_property_readonly("triangles", [](const TriMesh& t) { return t.triangles; })
      .def("euler_characteristic", [](const TriMesh& t) { return analyze_topology(t).euler_characteristic(); })
      .def("boundary_loops", [](const TriMesh& t) { return boundary_loops(t); })
      .def("__eq__", [](const TriMesh& a, const TriMesh& b) { return a == b; })
      .def("__repr__", [](const TriMesh& t) {
        return "<TriMesh " + std::to_string(t.vertices.size()) + " vertices, " + std::to_string(t.triangles.size()) +
               " triangles>";
      });

  m.def("read_obj", py::overload_cast<const std::filesystem::path&>(&read_obj), py::arg("path"));
  m.def("write_obj", py::overload_cast<const std::filesystem::path&, const TriMesh&>(&write_obj), py::arg("path"),
        py::arg("mesh"));

  m.def("ahu_code", [](const std::string& tree) { return ahu_code(parse_tree(tree)).code; }, py::arg("tree"));
  m.def("trees_isomorphic",
        [](const std::string& a, const std::string& b) { return trees_isomorphic(parse_tree(a), parse_tree(b)); },
        py::arg("a"), py::arg("b"));
  m.def(
      "tree_edges", [](const std::string& tree) { return edge_list(parse_tree(tree).graph()); }, py::arg("tree"));
  m.def(
      "multigraphs_isomorphic",
      [](std::size_t na, std::vector<Edge> ea, std::size_t nb, std::vector<Edge> eb) {
        return multigraphs_isomorphic(Multigraph(na, std::move(ea)), Multigraph(nb, std::move(eb)));
      },
      py::arg("n_a"), py::arg("edges_a"), py::arg("n_b"), py::arg("edges_b"));
  m.def(
      "enumerate_free_trees",
      [](int n) {
        std::vector<std::string> out;
        for (const auto& c : enumerate_free_trees(n)) out.push_back(c.code);
        return out;
      },
      py::arg("n"));
  m.def(
      "cayley_lower_bound_parts",
      [](int n) {
        const Rational r = cayley_lower_bound(n);
        return std::pair(numerator(r).str(), denominator(r).str());
      },
      py::arg("n"));

  m.def(
      "generate_model_surface",
      [](const std::string& tree, int genus, std::optional<VertexId> root, int resolution, double shrink,
         bool symmetric, bool smooth_joins) {
        return generate_model_surface(make_spec(tree, genus, root, resolution, shrink, symmetric, smooth_joins));
      },
      py::arg("tree"), py::arg("genus") = 0, py::arg("root") = py::none(), py::arg("resolution") = 64,
      py::arg("shrink") = 0.35, py::arg("symmetric") = true, py::arg("smooth_joins") = false,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "model_sidecar",
      [](const std::string& tree, int genus, std::optional<VertexId> root, int resolution, double shrink,
         bool symmetric, bool smooth_joins) {
        const ModelSurfaceSpec spec = make_spec(tree, genus, root, resolution, shrink, symmetric, smooth_joins);
        return to_python(model_sidecar(spec, build_model_surface(spec)));
      },
      py::arg("tree"), py::arg("genus") = 0, py::arg("root") = py::none(), py::arg("resolution") = 64,
      py::arg("shrink") = 0.35, py::arg("symmetric") = true, py::arg("smooth_joins") = false);

  m.def("self_intersects", &self_intersects, py::arg("mesh"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "validate_properly_embedded",
      [](const TriMesh& mesh, double radius) { return to_python(to_json(validate_properly_embedded(mesh, {radius}))); },
      py::arg("mesh"), py::arg("ball_radius") = 1.0);
  m.def("genus_and_boundary", &genus_and_boundary, py::arg("mesh"));
  m.def(
      "boundary_graph_of_surface",
      [](const TriMesh& mesh, double radius, std::uint64_t seed) {
        const Tree t = boundary_graph_of_surface(mesh, {radius}, seed);
        return py::make_tuple(t.vertex_count(), edge_list(t.graph()));
      },
      py::arg("mesh"), py::arg("ball_radius") = 1.0, py::arg("seed") = 0);
  m.def(
      "isotopy_signature",
      [](const TriMesh& mesh, double radius, std::uint64_t seed) {
        const Signature s = isotopy_signature(mesh, {radius}, seed);
        return py::make_tuple(s.genus, s.boundary_tree.code);
      },
      py::arg("mesh"), py::arg("ball_radius") = 1.0, py::arg("seed") = 0);
  m.def(
      "isotopy_equivalent",
      [](const TriMesh& a, const TriMesh& b, double radius, std::uint64_t seed) {
        return isotopy_equivalent(a, b, {radius}, seed);
      },
      py::arg("a"), py::arg("b"), py::arg("ball_radius") = 1.0, py::arg("seed") = 0);
  m.attr("ISOTOPY_HYPOTHESIS_NOTE") = kIsotopyHypothesisNote;

  m.def(
      "sphere_boundary_graph",
      [](const std::vector<std::vector<std::array<double, 3>>>& loops, std::uint64_t seed) {
        std::vector<SphericalLoop> ls;
        for (const auto& l : loops) {
          SphericalLoop s;
          for (const auto& p : l) s.push_back({p[0], p[1], p[2]});
          ls.push_back(std::move(s));
        }
        SphereGraphOptions options;
        options.seed = seed;
        const Tree t = sphere_boundary_graph(ls, options);
        return py::make_tuple(t.vertex_count(), edge_list(t.graph()));
      },
      py::arg("loops"), py::arg("seed") = 0);

  m.def(
      "builtin_shrinker",
      [](const std::string& kind, double extent, int resolution) {
        const auto k = parse_shrinker_kind(kind);
        if (!k) throw InvalidInput("unknown builtin shrinker: " + kind);
        return builtin_shrinker(*k, extent, resolution);
      },
      py::arg("kind"), py::arg("extent") = 16.0, py::arg("resolution") = 64);
  m.def(
      "graph_at_infinity",
      [](const TriMesh& mesh, double r_min, double r_max, std::optional<int> steps, std::uint64_t seed,
         unsigned threads) {
        InfinityOptions options;
        options.seed = seed;
        options.threads = threads;
        StabilizationReport rep;
        {
          py::gil_scoped_release release;
          rep = graph_at_infinity(mesh, r_min, r_max, steps.value_or(default_slice_steps(r_min, r_max)), options);
        }
        return to_python(to_json(rep));
      },
      py::arg("mesh"), py::arg("r_min"), py::arg("r_max"), py::arg("steps") = py::none(), py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.attr("SHRINKER_MIN_RADIUS") = kShrinkerMinRadius;
}
