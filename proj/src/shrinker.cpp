#include "unknot/shrinker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "unknot/error.hpp"
#include "unknot/primitives.hpp"

namespace unknot {
namespace {

// Point where edge (a, b) meets |x| = R, computed from the lower index so
// both triangles on the edge agree bit for bit.
Vec3 crossing(const TriMesh& m, Index i, Index j, double R) {
  if (j < i) std::swap(i, j);
  const Vec3 a = m.vertices[i], d = m.vertices[j] - m.vertices[i];
  const double A = dot(d, d), Bh = dot(a, d), C = dot(a, a) - R * R;
  const double disc = std::sqrt(std::max(0.0, Bh * Bh - A * C));
  // Exactly one root lies in (0, 1).
  const double q = -(Bh + std::copysign(disc, Bh));
  double t1 = q / A, t2 = q != 0 ? C / q : t1;
  const double t = (t1 >= 0 && t1 <= 1) ? t1 : t2;
  return a + d * std::clamp(t, 0.0, 1.0);
}

std::string format_radius(double r) {
  std::ostringstream s;
  s.precision(17);
  s << r;
  return s.str();
}

}  // namespace

SliceResult slice_graph(const TriMesh& m, double R, const SphereGraphOptions& options) {
  if (!(R > 0)) throw InvalidInput("slice radius must be positive");
  std::vector<char> outside(m.vertices.size(), 0);
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles) {
    for (Index v : t) used[v] = 1;
  }
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    if (!used[i]) continue;
    const double len = norm(m.vertices[i]);
    if (std::abs(len - R) <= options.eps * R) {
      throw GeometryError("non-transversal slice at R=" + format_radius(R) + " (vertex " + std::to_string(i) +
                          " on the sphere); retry with R +/- a small jitter");
    }
    outside[i] = len > R;
  }

  // Crossing edge -> the (at most two) triangles through it.
  std::map<std::uint64_t, std::vector<Index>> through;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const Index a = tri[k], b = tri[(k + 1) % 3];
      if (outside[a] != outside[b]) through[edge_key(a, b)].push_back(static_cast<Index>(t));
    }
  }
  auto other_edge = [&](Index t, std::uint64_t e) {
    const auto& tri = m.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const Index a = tri[k], b = tri[(k + 1) % 3];
      const std::uint64_t f = edge_key(a, b);
      if (f != e && outside[a] != outside[b]) return f;
    }
    throw TopologyError("slice: triangle with a single crossing edge");
  };

  SliceResult out;
  out.R = R;
  std::map<std::uint64_t, char> done;
  for (const auto& [start, tris] : through) {
    if (done.count(start)) continue;
    if (tris.size() != 2) throw GeometryError("open intersection curve at R=" + format_radius(R) +
                                              " (the mesh ends before the sphere closes)");
    SphericalLoop loop;
    std::uint64_t e = start;
    Index t = tris[0];
    while (true) {
      done[e] = 1;
      loop.push_back(crossing(m, static_cast<Index>(e >> 32), static_cast<Index>(e & 0xffffffffu), R) / R);
      const std::uint64_t f = other_edge(t, e);
      if (f == start) break;
      const auto& next = through.at(f);
      if (next.size() != 2) throw GeometryError("open intersection curve at R=" + format_radius(R));
      t = next[0] == t ? next[1] : next[0];
      e = f;
    }
    out.loops.push_back(std::move(loop));
  }
  out.graph = sphere_boundary_graph(out.loops, options).graph();
  out.loops = validated_loops(std::move(out.loops), options.eps);
  return out;
}

int default_slice_steps(double r_min, double r_max) {
  if (!(r_min > 0) || !(r_max > r_min)) return 2;
  return std::max(2, static_cast<int>(std::ceil(std::log(r_max / r_min) / std::log(1.3))) + 1);
}

StabilizationReport graph_at_infinity(const TriMesh& m, double r_min, double r_max, int steps,
                                      const InfinityOptions& options) {
  if (!(r_min >= kShrinkerMinRadius * (1 - 1e-4))) throw InvalidInput("r_min must be at least 2 sqrt 2");
  if (!(r_max > r_min)) throw InvalidInput("r_max must exceed r_min");
  if (steps < 1) throw InvalidInput("steps must be positive");

  StabilizationReport rep;
  const MeshTopology topo = analyze_topology(m);
  if (!topo.boundary_loops.empty()) {
    double lo = 1e300;
    for (const auto& loop : topo.boundary_loops) {
      for (Index v : loop) lo = std::min(lo, norm(m.vertices[v]));
    }
    if (!(lo > r_max)) throw InvalidInput("mesh boundary lies inside the largest slice radius");
    rep.truncation_radius = lo;
  } else {
    for (const auto& p : m.vertices) rep.truncation_radius = std::max(rep.truncation_radius, norm(p));
  }

  std::vector<double> radii(steps);
  for (int i = 0; i < steps; ++i) {
    radii[i] = steps == 1 ? r_min : r_min * std::pow(r_max / r_min, static_cast<double>(i) / (steps - 1));
  }
  std::vector<std::string> codes(steps);
  std::vector<std::exception_ptr> errors(steps);

  auto work = [&](int i) {
    std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
    double R = radii[i];
    for (int attempt = 0;; ++attempt) {
      try {
        const SliceResult s = slice_graph(m, R, {kEpsilon, options.seed, 16});
        codes[i] = ahu_code(Tree(s.graph)).code;
        radii[i] = R;
        return;
      } catch (const GeometryError&) {
        if (attempt >= options.max_retries) {
          errors[i] = std::current_exception();
          return;
        }
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 - 1;
        R = radii[i] * (1 + options.jitter * u);
      }
    }
  };
  const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(steps));
  if (workers == 1) {
    for (int i = 0; i < steps; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < steps; i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  rep.radii_tested = radii;
  rep.codes = codes;
  const int tail = (steps + 1) / 2;
  rep.stabilized = std::all_of(codes.end() - tail, codes.end(), [&](const std::string& c) { return c == codes.back(); });
  if (rep.stabilized) {
    int first = steps - 1;
    while (first > 0 && codes[first - 1] == codes.back()) --first;
    rep.r0_estimate = radii[first];
    rep.graph_at_infinity = CanonicalCode{codes.back()};
  }
  return rep;
}

std::optional<ShrinkerKind> parse_shrinker_kind(std::string_view name) {
  if (name == "plane") return ShrinkerKind::plane;
  if (name == "sphere2") return ShrinkerKind::sphere2;
  if (name == "cylinder2") return ShrinkerKind::cylinder2;
  return std::nullopt;
}

TriMesh builtin_shrinker(ShrinkerKind kind, double extent, int resolution) {
  if (resolution < 12) throw InvalidInput("shrinker resolution must be at least 12");
  switch (kind) {
    case ShrinkerKind::plane:
      if (!(extent > 4)) throw InvalidInput("plane extent must exceed 4");
      return make_polar_disc(extent, resolution, std::max(8, static_cast<int>(std::ceil(extent * 2))));
    case ShrinkerKind::sphere2:
      return make_uv_sphere(2.0, resolution, resolution / 2);
    case ShrinkerKind::cylinder2:
      if (!(extent > 4)) throw InvalidInput("cylinder extent must exceed 4");
      return make_cylinder(2.0, extent, resolution, std::max(8, static_cast<int>(std::ceil(extent * 2))));
  }
  throw InvalidInput("unknown shrinker kind");
}

}  // namespace unknot
