#include "unknot/serialize.hpp"

#include <istream>
#include <ostream>

#include "unknot/error.hpp"

namespace unknot {

Json to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const ValidationReport& r) {
  Json items = Json::array();
  for (const auto& o : r.offending_items) items.push_back({{"kind", o.kind}, {"indices", o.indices}});
  return {{"properly_embedded", r.properly_embedded},
          {"self_intersecting", r.self_intersecting},
          {"connected", r.connected},
          {"orientable", r.orientable},
          {"manifold", r.manifold},
          {"offending_items", items},
          {"margins", {{"boundary_sphericity_error", r.boundary_error}, {"interior_clearance", r.interior_clearance}}}};
}

Json to_json(const Signature& s) {
  return {{"genus", s.genus}, {"boundary_tree", s.boundary_tree.code}, {"signature", s.to_string()}};
}

Json to_json(const StabilizationReport& r) {
  Json j = {{"radii_tested", r.radii_tested},
            {"codes", r.codes},
            {"stabilized", r.stabilized},
            {"truncation_radius", r.truncation_radius}};
  j["R0_estimate"] = r.r0_estimate ? Json(*r.r0_estimate) : Json(nullptr);
  j["graph_at_infinity"] = r.graph_at_infinity ? Json(r.graph_at_infinity->code) : Json(nullptr);
  j["vertices"] = r.graph_at_infinity ? Json(r.graph_at_infinity->code.size() / 2) : Json(nullptr);
  return j;
}

Json to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"vertex_count", g.vertex_count()}, {"edges", edges}};
}

Json model_sidecar(const ModelSurfaceSpec& spec, const ModelSurface& surface) {
  Json features = Json::array();
  for (const auto& f : surface.features) {
    Json j = {{"node", f.node}, {"depth", f.depth}, {"kind", f.kind}, {"center", to_json(f.center)},
              {"radius", f.radius}};
    j["parent"] = f.parent ? Json(*f.parent) : Json(nullptr);
    if (f.kind == "disc") {
      j["normal"] = to_json(f.normal);
      j["cap_angle"] = f.cap_angle;
      j["bridge_radius"] = f.bridge_radius;
    }
    features.push_back(std::move(j));
  }
  Json plane = nullptr;
  if (surface.symmetric) plane = {{"normal", Json::array({0, 1, 0})}, {"offset", 0}};
  return {{"schema", kSchema},
          {"spec",
           {{"tree", tree_to_text(spec.tree, surface.root)},
            {"tree_code", ahu_code(spec.tree).code},
            {"genus", spec.genus},
            {"root", surface.root},
            {"resolution", spec.resolution},
            {"shrink", spec.shrink},
            {"symmetric", spec.symmetric},
            {"smooth_joins", spec.smooth_joins}}},
          {"features", features},
          {"symmetry_plane", plane},
          {"genus_site", {{"center", to_json(surface.genus_site.center)}, {"radius", surface.genus_site.radius}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<SphericalLoop> read_loops_jsonl(std::istream& in) {
  std::vector<SphericalLoop> loops;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("loops: invalid JSON: ") + e.what(), here);
    }
    if (!j.is_array()) throw ParseError("loops: each line must be an array of [x,y,z] points", here);
    SphericalLoop loop;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
        throw ParseError("loops: point is not [x,y,z]", here);
      }
      loop.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

void write_loops_jsonl(std::ostream& out, const std::vector<SphericalLoop>& loops) {
  for (const auto& loop : loops) {
    Json j = Json::array();
    for (const auto& p : loop) j.push_back(to_json(p));
    out << j.dump() << '\n';
  }
}

}  // namespace unknot
