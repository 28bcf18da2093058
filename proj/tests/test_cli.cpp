#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "unknot/cli.hpp"
#include "unknot/mesh.hpp"
#include "unknot/primitives.hpp"

using namespace unknot;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "unknot_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("generate writes an OBJ and a sidecar") {
  const fs::path obj = scratch("star.obj");
  const Run r = run({"generate", "--tree", "(()()())", "--genus", "0", "--resolution", "32", "-o", obj.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(obj));
  const auto side = nlohmann::json::parse(slurp(scratch("star.json")));
  CHECK(side["schema"] == "unknot-kit/1");
  CHECK(side["spec"]["genus"] == 0);
  CHECK(side["features"].size() == 4);
  CHECK(side["symmetry_plane"]["normal"] == nlohmann::json::array({0, 1, 0}));
}

TEST_CASE("generate is byte-for-byte deterministic") {
  const fs::path a = scratch("det_a.obj"), b = scratch("det_b.obj");
  const std::vector<std::string> common = {"generate", "--tree", "((())())", "--genus", "2", "--resolution", "32"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"-o", a.string()});
  args_b.insert(args_b.end(), {"-o", b.string()});
  REQUIRE(run(args_a).code == 0);
  REQUIRE(run(args_b).code == 0);
  CHECK(slurp(a) == slurp(b));
  auto sa = nlohmann::json::parse(slurp(scratch("det_a.json")));
  auto sb = nlohmann::json::parse(slurp(scratch("det_b.json")));
  CHECK(sa == sb);
}

TEST_CASE("analyze and isotopy-check") {
  const fs::path star = scratch("iso_star.obj"), path = scratch("iso_path.obj");
  REQUIRE(run({"generate", "--tree", "(()()())", "--resolution", "32", "-o", star.string()}).code == 0);
  REQUIRE(run({"generate", "--tree", "(((())))", "--resolution", "32", "-o", path.string()}).code == 0);

  const Run a = run({"analyze", star.string(), "--json"});
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == "unknot-kit/1");
  CHECK(j["validation"]["properly_embedded"] == true);
  CHECK(j["signature"]["signature"] == "g=0;tree=(()()())");

  const Run text = run({"isotopy-check", star.string(), path.string()});
  CHECK(text.code == 0);
  CHECK(text.out.find("NOT equivalent") != std::string::npos);

  const Run js = run({"--json", "isotopy-check", star.string(), path.string()});
  CHECK(js.code == 0);
  const auto k = nlohmann::json::parse(js.out);
  CHECK(k["result"] == false);
  CHECK(k["note"].is_string());

  const Run same = run({"isotopy-check", star.string(), star.string(), "--json"});
  CHECK(nlohmann::json::parse(same.out)["result"] == true);
}

TEST_CASE("boundary-graph on meshes and loop files") {
  const fs::path obj = scratch("bg.obj");
  REQUIRE(run({"generate", "--tree", "((())())", "--genus", "1", "--resolution", "32", "-o", obj.string()}).code == 0);
  const Run r = run({"boundary-graph", obj.string(), "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["tree"] == "((())())");
  CHECK(j["graph"]["vertex_count"] == 4);

  const fs::path loops = scratch("loops.jsonl");
  {
    std::ofstream f(loops);
    f << "[[1,0,0],[0,1,0],[-1,0,0],[0,-1,0]]\n";
  }
  const Run dot = run({"boundary-graph", loops.string(), "--dot", "-"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("graph boundary_graph") != std::string::npos);

  {
    std::ofstream f(loops);
    f << "[[1,0,0],[0,1,0]\n";
  }
  CHECK(run({"boundary-graph", loops.string()}).code == 1);
}

TEST_CASE("enumerate-trees") {
  const Run r = run({"enumerate-trees", "6", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 6);
  CHECK(j["trees"].size() == 6);
  CHECK(run({"enumerate-trees", "13"}).code == 1);
}

TEST_CASE("shrinker-graph") {
  const Run r = run({"shrinker-graph", "--builtin", "cylinder2", "--rmin", "2.8284", "--rmax", "12", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "unknot-kit/1");
  CHECK(j["tree"] == "(()())");
  CHECK(j["stabilized"] == true);

  const fs::path prefix = scratch("slice");
  const Run e = run({"shrinker-graph", "--builtin", "plane", "--rmin", "3", "--rmax", "6", "--steps", "2",
                     "--export-loops", prefix.string()});
  CHECK(e.code == 0);
  CHECK(fs::exists(prefix.string() + "_0.jsonl"));
  CHECK(run({"shrinker-graph", "--rmin", "3", "--rmax", "6"}).code == 1);
  CHECK(run({"shrinker-graph", "--builtin", "cube", "--rmin", "3", "--rmax", "6"}).code == 1);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"generate", "--tree", "(()", "-o", scratch("x.obj").string()}).code == 1);
  CHECK(run({"analyze", scratch("missing.obj").string()}).code == 1);

  TriMesh disc = make_polar_disc(1, 32, 6);
  for (auto& p : disc.vertices) p += Vec3{0.2, 0, 0};
  const fs::path bad = scratch("shifted.obj");
  write_obj(bad, disc);
  const Run a = run({"analyze", bad.string()});
  CHECK(a.code == 2);
  CHECK(a.out.find("properly embedded: no") != std::string::npos);
  CHECK(run({"isotopy-check", bad.string(), bad.string()}).code == 2);
}
