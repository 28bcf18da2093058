#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "unknot/analysis.hpp"
#include "unknot/arrangement.hpp"
#include "unknot/model_surface.hpp"
#include "unknot/shrinker.hpp"

namespace unknot {

inline constexpr const char* kSchema = "unknot-kit/1";

using Json = nlohmann::json;

Json to_json(const Vec3& v);
Json to_json(const ValidationReport& r);
Json to_json(const Signature& s);
Json to_json(const StabilizationReport& r);
Json to_json(const Multigraph& g);

// Sidecar written next to a generated OBJ.
Json model_sidecar(const ModelSurfaceSpec& spec, const ModelSurface& surface);

// Two-space indent, trailing newline.
std::string dump(const Json& j);

// One loop per line: [[x,y,z], ...]. Blank lines are skipped.
std::vector<SphericalLoop> read_loops_jsonl(std::istream& in);
void write_loops_jsonl(std::ostream& out, const std::vector<SphericalLoop>& loops);

}  // namespace unknot
