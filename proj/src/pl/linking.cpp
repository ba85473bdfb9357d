#include "pl/linking.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "core/error.hpp"

namespace morselink::pl {

using geom::vadd;
using geom::vcross;
using geom::vdot;
using geom::vnormalize;

namespace {

constexpr double kEndpointTol = 1e-7;  // segment-parameter margin at joints
constexpr double kSnapTol = 1e-9;      // coordinates this close count as incident
constexpr double kTolScale = 1e-9;     // ambient margins, relative to diameter

Vec jitter_offset(const ManifoldModel& model, unsigned long long seed, int attempt) {
  std::mt19937_64 rng(seed * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL * attempt);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double scale = 1e-6 * model.diameter();
  if (model.kind() == "circle-union") return {0.0, scale * u(rng), 0.0};
  if (model.kind() == "flat-torus") return {scale * u(rng), scale * u(rng), 0.0};
  return {scale * u(rng), scale * u(rng), scale * u(rng)};
}

PLChain translate_chain(const ManifoldModel& model, const PLChain& g, const Vec& d) {
  PLChain out = g;
  bool sphere = model.kind() == "embedded-sphere";
  for (auto& cell : out.cells)
    for (auto& v : cell.verts) v = sphere ? vnormalize(vadd(v, d)) : vadd(v, d);
  return out;
}

// Interior edges included: the evaluation point must stay off every cell
// wall, or neighbouring cells could double-count it.
PLChain cell_skeleton(const PLChain& g) {
  PLChain out;
  out.dim = g.dim - 1;
  for (const auto& cell : g.cells) {
    int d = cell.dim();
    if (d == 1) {
      out.cells.push_back({{cell.verts[0]}, 1});
      out.cells.push_back({{cell.verts[1]}, 1});
    } else if (d == 2) {
      out.cells.push_back({{cell.verts[0], cell.verts[1]}, 1});
      out.cells.push_back({{cell.verts[1], cell.verts[2]}, 1});
      out.cells.push_back({{cell.verts[2], cell.verts[0]}, 1});
    }
  }
  return out;
}

long long points_in_top_chain(const ManifoldModel& model, const PLChain& pts,
                              const PLChain& top) {
  PLChain walls = cell_skeleton(top);
  double margin = kTolScale * model.diameter();
  long long total = 0;
  for (const auto& cell : pts.cells) {
    Vec x = model.wrap(cell.verts[0]);
    if (!walls.is_zero() && carrier_distance(model, walls, x) < margin)
      fail(errc::nontransverse_crossing, "evaluation point lies on a cell wall");
    total += cell.mult * winding_multiplicity(model, top, x);
  }
  return total;
}

long long curve_crossings(const ManifoldModel& model, const PLChain& a, const PLChain& b) {
  long long total = 0;
  for (const auto& ca : a.cells)
    for (const auto& cb : b.cells) {
      auto cr = segment_crossing(model, ca.verts[0], ca.verts[1], cb.verts[0], cb.verts[1],
                                 kEndpointTol);
      if (!cr) continue;
      if (cr->near_parallel || cr->near_endpoint)
        fail(errc::nontransverse_crossing, "borderline crossing of the two carriers");
      total += cr->sign * ca.mult * cb.mult;
    }
  return total;
}

long long count_once(const ManifoldModel& model, const PLChain& a, const PLChain& b) {
  int n = model.dimension();
  require(a.dim + b.dim == n, errc::invalid_argument,
          "intersection numbers need complementary dimensions");
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.dim == 0) return points_in_top_chain(model, a, b);
  if (b.dim == 0) return points_in_top_chain(model, b, a);
  return curve_crossings(model, a, b);
}

// ---- structured meshes and the integer boundary solve ----------------------

// Cyclic multiplicity profile on one circle component: walking in the +s
// direction, the interval multiplicity drops by the coefficient of each
// passed point of b.
struct CirclePoint {
  double s = 0.0;
  long long coeff = 0;
};

void append_circle_intervals(const ManifoldModel& model, int comp,
                             std::vector<CirclePoint> marked, int pieces, PLChain& out) {
  double period = model.component_length(comp);
  std::sort(marked.begin(), marked.end(),
            [](const CirclePoint& a, const CirclePoint& b) { return a.s < b.s; });
  long long total = 0;
  for (const auto& m : marked) total += m.coeff;
  require(total == 0, errc::not_null_homologous,
          "cycle has nonzero total multiplicity on a circle component");
  if (marked.empty()) return;

  // Interval i runs from marked[i] to marked[i+1]; its multiplicity follows
  // from the jumps, up to one global constant fixed by the weighted median
  // (the shortest bounding chain by total length).
  size_t m = marked.size();
  std::vector<long long> mult(m, 0);
  for (size_t i = 1; i < m; ++i) mult[i] = mult[i - 1] - marked[i].coeff;
  std::vector<double> len(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    double next = (i + 1 < m) ? marked[i + 1].s : marked[0].s + period;
    len[i] = next - marked[i].s;
  }
  std::vector<std::pair<long long, double>> weighted;
  for (size_t i = 0; i < m; ++i) weighted.push_back({mult[i], len[i]});
  std::sort(weighted.begin(), weighted.end());
  double half = period / 2.0, acc = 0.0;
  long long shift = weighted.back().first;
  for (const auto& [value, w] : weighted) {
    acc += w;
    if (acc >= half) {
      shift = value;
      break;
    }
  }

  for (size_t i = 0; i < m; ++i) {
    long long c = mult[i] - shift;
    if (c == 0) continue;
    double s0 = marked[i].s;
    double s1 = s0 + len[i];
    for (int piece = 0; piece < pieces; ++piece) {
      double a = s0 + (s1 - s0) * piece / pieces;
      double b = (piece + 1 == pieces) ? s1 : s0 + (s1 - s0) * (piece + 1) / pieces;
      out.cells.push_back({{{double(comp), a, 0.0}, {double(comp), b, 0.0}}, c});
    }
  }
}

PLChain circle_bounding(const ManifoldModel& model, const PLChain& b, int pieces) {
  std::vector<std::vector<CirclePoint>> marked(model.components());
  std::vector<geom::CriticalPoint> crits = geom::locate_critical_points(model);
  for (const auto& cell : b.cells) {
    Vec w = model.wrap(cell.verts[0]);
    marked[int(std::llround(w[0]))].push_back({w[1], cell.mult});
  }
  // Cuts at the critical points refine the mesh without changing the solve;
  // cuts that collide with a point of b defer to the exact b coordinate.
  for (const auto& c : crits) {
    int comp = int(std::llround(c.coords[0]));
    bool taken = false;
    for (const auto& m : marked[comp])
      if (std::fabs(m.s - c.coords[1]) <= kSnapTol) taken = true;
    if (!taken) marked[comp].push_back({c.coords[1], 0});
  }

  PLChain out;
  out.dim = 1;
  for (int comp = 0; comp < model.components(); ++comp)
    append_circle_intervals(model, comp, marked[comp], pieces, out);
  return canonical(model, out);
}

// Triangulated closed surface with oriented triangles and the two signed
// triangle incidences of every edge; the boundary solve walks the dual graph.
struct SurfaceMesh {
  std::vector<Vec> verts;
  std::vector<std::array<int, 3>> tris;
  // Edge key (lo vertex, hi vertex) -> (triangle where lo->hi is positively
  // oriented, triangle where it is negative).
  std::map<std::pair<int, int>, std::pair<int, int>> edge_tris;
  std::vector<std::vector<int>> adjacency;

  void finalize() {
    for (int t = 0; t < int(tris.size()); ++t)
      for (int e = 0; e < 3; ++e) {
        int u = tris[t][e], v = tris[t][(e + 1) % 3];
        auto key = std::minmax(u, v);
        auto& slot = edge_tris[{key.first, key.second}];
        (u < v ? slot.first : slot.second) = t;
      }
    adjacency.assign(verts.size(), {});
    for (const auto& [key, slot] : edge_tris) {
      adjacency[key.first].push_back(key.second);
      adjacency[key.second].push_back(key.first);
    }
    for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());
  }
};

SurfaceMesh torus_grid(int g) {
  SurfaceMesh mesh;
  mesh.verts.reserve(size_t(g) * g);
  for (int j = 0; j < g; ++j)
    for (int i = 0; i < g; ++i) mesh.verts.push_back({double(i) / g, double(j) / g, 0.0});
  auto vid = [g](int i, int j) { return ((j % g) + g) % g * g + ((i % g) + g) % g; };
  for (int j = 0; j < g; ++j)
    for (int i = 0; i < g; ++i) {
      mesh.tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      mesh.tris.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  mesh.finalize();
  return mesh;
}

SurfaceMesh icosphere(int depth) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> v = {{-1, p, 0}, {1, p, 0},   {-1, -p, 0}, {1, -p, 0},
                        {0, -1, p}, {0, 1, p},   {0, -1, -p}, {0, 1, -p},
                        {p, 0, -1}, {p, 0, 1},   {-p, 0, -1}, {-p, 0, 1}};
  for (auto& x : v) x = vnormalize(x);
  std::vector<std::array<int, 3>> t = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < depth; ++level) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find({key.first, key.second});
      if (it != mid.end()) return it->second;
      v.push_back(vnormalize(vadd(v[a], v[b])));
      int id = int(v.size()) - 1;
      mid[{key.first, key.second}] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(t.size() * 4);
    for (const auto& tri : t) {
      int a = tri[0], b = tri[1], c = tri[2];
      int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    t = std::move(next);
  }
  SurfaceMesh mesh;
  mesh.verts = std::move(v);
  mesh.tris = std::move(t);
  for (const auto& tri : mesh.tris)
    require(vdot(mesh.verts[tri[0]], vcross(mesh.verts[tri[1]], mesh.verts[tri[2]])) > 0,
            errc::internal, "sphere mesh triangle is not outward oriented");
  mesh.finalize();
  return mesh;
}

// Directed mesh-edge coefficients of the snapped cycle.
using EdgeChain = std::map<std::pair<int, int>, long long>;

void add_edge(EdgeChain& chain, int u, int v, long long c) {
  if (u == v || c == 0) return;
  auto key = std::minmax(u, v);
  long long& slot = chain[{key.first, key.second}];
  slot += (u < v ? c : -c);
  if (slot == 0) chain.erase({key.first, key.second});
}

// Breadth-first shortest edge path, deterministic by ascending neighbour
// order; from is included, to is the last entry.
std::vector<int> mesh_edge_path(const SurfaceMesh& mesh, int from, int to) {
  std::vector<int> path;
  if (from == to) return path;
  std::map<int, int> prev;
  std::deque<int> queue{from};
  prev[from] = from;
  while (!queue.empty() && !prev.count(to)) {
    int u = queue.front();
    queue.pop_front();
    for (int nb : mesh.adjacency[u])
      if (!prev.count(nb)) {
        prev[nb] = u;
        queue.push_back(nb);
      }
  }
  require(prev.count(to) > 0, errc::internal, "mesh vertex graph is disconnected");
  for (int at = to; at != from; at = prev[at]) path.push_back(at);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

PLChain edge_chain_to_pl(const ManifoldModel& model, const SurfaceMesh& mesh,
                         const EdgeChain& chain) {
  PLChain out;
  out.dim = 1;
  for (const auto& [key, c] : chain) {
    Vec a = mesh.verts[key.first];
    Vec b = mesh.verts[key.second];
    if (model.kind() == "flat-torus")
      for (int axis = 0; axis < 2; ++axis) {
        if (b[axis] - a[axis] > 0.5) b[axis] -= 1.0;
        if (a[axis] - b[axis] > 0.5) b[axis] += 1.0;
      }
    out.cells.push_back({{a, b}, c});
  }
  return canonical(model, out);
}

// Torus: snap each vertex to the nearest grid node and join consecutive
// nodes by an axis-monotone staircase in the covering plane.
EdgeChain snap_to_torus_grid(const PLChain& b, int g) {
  EdgeChain out;
  auto vid = [g](long long i, long long j) {
    return int(((j % g) + g) % g * g + ((i % g) + g) % g);
  };
  for (const auto& cell : b.cells) {
    long long i0 = std::llround(cell.verts[0][0] * g), j0 = std::llround(cell.verts[0][1] * g);
    long long i1 = std::llround(cell.verts[1][0] * g), j1 = std::llround(cell.verts[1][1] * g);
    for (long long i = i0; i != i1; i += (i1 > i0 ? 1 : -1)) {
      long long lo = (i1 > i0 ? i : i - 1);
      add_edge(out, vid(lo, j0), vid(lo + 1, j0), (i1 > i0 ? cell.mult : -cell.mult));
    }
    for (long long j = j0; j != j1; j += (j1 > j0 ? 1 : -1)) {
      long long lo = (j1 > j0 ? j : j - 1);
      add_edge(out, vid(i1, lo), vid(i1, lo + 1), (j1 > j0 ? cell.mult : -cell.mult));
    }
  }
  return out;
}

// Sphere: snap to the nearest mesh vertex and join consecutive snaps by the
// breadth-first shortest edge path (deterministic by ascending neighbour
// order).
int nearest_sphere_vertex(const SurfaceMesh& mesh, const Vec& x) {
  int best = 0;
  double best_d = -2.0;
  for (int i = 0; i < int(mesh.verts.size()); ++i) {
    double d = vdot(mesh.verts[i], x);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

EdgeChain snap_to_sphere_mesh(const SurfaceMesh& mesh, const PLChain& b) {
  EdgeChain out;
  for (const auto& cell : b.cells) {
    int u = nearest_sphere_vertex(mesh, vnormalize(cell.verts[0]));
    int v = nearest_sphere_vertex(mesh, vnormalize(cell.verts[1]));
    std::vector<int> path = mesh_edge_path(mesh, u, v);
    for (size_t i = 0; i + 1 < path.size(); ++i)
      add_edge(out, path[i], path[i + 1], cell.mult);
  }
  return out;
}

// Null-homologous 0-cycles bound star-shaped edge paths: one path from a
// base vertex to every snapped point; the base contributions cancel because
// the total multiplicity vanishes.
PLChain surface_point_bounding(const ManifoldModel& model, const SurfaceMesh& mesh,
                               const PLChain& b, int grid) {
  std::map<int, long long> snapped;
  for (const auto& cell : b.cells) {
    int v;
    if (grid > 0) {
      long long i = std::llround(cell.verts[0][0] * grid);
      long long j = std::llround(cell.verts[0][1] * grid);
      v = int(((j % grid) + grid) % grid * grid + ((i % grid) + grid) % grid);
    } else {
      v = nearest_sphere_vertex(mesh, vnormalize(cell.verts[0]));
    }
    snapped[v] += cell.mult;
  }
  long long total = 0;
  for (const auto& [v, c] : snapped) total += c;
  require(total == 0, errc::not_null_homologous,
          "point cycle has nonzero total multiplicity");

  EdgeChain edges;
  if (!snapped.empty()) {
    int base = snapped.begin()->first;
    for (const auto& [v, c] : snapped) {
      std::vector<int> path = mesh_edge_path(mesh, base, v);
      for (size_t i = 0; i + 1 < path.size(); ++i) add_edge(edges, path[i], path[i + 1], c);
    }
  }
  PLChain out = edge_chain_to_pl(model, mesh, edges);

  PLChain snapped_pl;
  snapped_pl.dim = 0;
  for (const auto& [v, c] : snapped)
    if (c != 0) snapped_pl.cells.push_back({{mesh.verts[v]}, c});
  PLChain diff = chain_add(model, boundary(model, out),
                           chain_scale(-1, canonical(model, snapped_pl)));
  require(diff.is_zero(), errc::internal, "point bounding chain failed its boundary check");
  return out;
}

// Solves dX = (edge chain) over the integers by propagating triangle
// multiplicities across the dual graph; a contradiction on a closed dual
// loop is exactly a nonzero homology class.
PLChain surface_bounding(const ManifoldModel& model, const SurfaceMesh& mesh,
                         const EdgeChain& target) {
  std::vector<long long> w(mesh.tris.size(), 0);
  std::vector<char> known(mesh.tris.size(), 0);
  auto coeff = [&target](int lo, int hi) {
    auto it = target.find({lo, hi});
    return it == target.end() ? 0LL : it->second;
  };
  std::deque<int> queue;
  w[0] = 0;
  known[0] = 1;
  queue.push_back(0);
  size_t visited = 1;
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int e = 0; e < 3; ++e) {
      int u = mesh.tris[t][e], v = mesh.tris[t][(e + 1) % 3];
      auto key = std::minmax(u, v);
      const auto& slot = mesh.edge_tris.at({key.first, key.second});
      // c = w(positive triangle) - w(negative triangle) on every edge.
      long long c = coeff(key.first, key.second);
      int other = slot.first == t ? slot.second : slot.first;
      long long expected = slot.first == t ? w[t] - c : w[t] + c;
      if (!known[other]) {
        w[other] = expected;
        known[other] = 1;
        ++visited;
        queue.push_back(other);
      } else {
        require(w[other] == expected, errc::not_null_homologous,
                "cycle represents a nonzero homology class");
      }
    }
  }
  require(visited == mesh.tris.size(), errc::internal, "mesh dual graph is disconnected");

  // The solution is defined up to the fundamental class; drop the most
  // common level so the support is smallest.
  std::map<long long, long long> histogram;
  for (long long value : w) ++histogram[value];
  long long shift = 0, best = -1;
  for (const auto& [value, count] : histogram)
    if (count > best) {
      best = count;
      shift = value;
    }

  PLChain out;
  out.dim = 2;
  for (size_t t = 0; t < mesh.tris.size(); ++t) {
    long long c = w[t] - shift;
    if (c == 0) continue;
    out.cells.push_back({{mesh.verts[mesh.tris[t][0]], mesh.verts[mesh.tris[t][1]],
                          mesh.verts[mesh.tris[t][2]]},
                         c});
  }
  // Torus triangles are stored wrapped per vertex; rebuild cover-consistent
  // cells by shifting every vertex next to the first one.
  if (model.kind() == "flat-torus")
    for (auto& cell : out.cells)
      for (int i = 1; i < 3; ++i) {
        Vec& v = cell.verts[i];
        for (int axis = 0; axis < 2; ++axis) {
          if (v[axis] - cell.verts[0][axis] > 0.5) v[axis] -= 1.0;
          if (cell.verts[0][axis] - v[axis] > 0.5) v[axis] += 1.0;
        }
      }
  return canonical(model, out);
}

}  // namespace

long long intersection_number(const ManifoldModel& model, const PLChain& a_in, const PLChain& b_in,
                              unsigned long long seed) {
  PLChain a = canonical(model, a_in);
  PLChain b = canonical(model, b_in);
  for (int attempt = 0;; ++attempt) {
    PLChain cur = attempt == 0 ? a : translate_chain(model, a, jitter_offset(model, seed, attempt));
    try {
      return count_once(model, cur, b);
    } catch (const error& err) {
      bool retryable = err.code() == errc::nontransverse_crossing ||
                       err.code() == errc::simultaneous_crossing;
      if (!retryable) throw;
      if (attempt >= 8) fail(errc::nontransverse_after_jitter, err.what());
    }
  }
}

int default_mesh_scale(const ManifoldModel& model) {
  if (model.kind() == "circle-union") return 1;
  if (model.kind() == "flat-torus") return 128;
  return 5;
}

int refine_mesh_scale(const ManifoldModel& model, int mesh_scale) {
  return model.kind() == "embedded-sphere" ? mesh_scale + 1 : mesh_scale * 2;
}

PLChain bounding_chain(const ManifoldModel& model, const PLChain& b_in, int mesh_scale) {
  PLChain b = canonical(model, b_in);
  require(boundary(model, b).is_zero(), errc::invalid_argument,
          "bounding chains exist only for cycles");
  int scale = mesh_scale > 0 ? mesh_scale : default_mesh_scale(model);

  if (model.kind() == "circle-union") {
    require(b.dim == 0, errc::invalid_argument, "circle cycles are point chains");
    PLChain out = circle_bounding(model, b, scale);
    PLChain diff = chain_add(model, boundary(model, out), chain_scale(-1, b));
    require(diff.is_zero(), errc::internal, "circle bounding chain failed its boundary check");
    return out;
  }

  require(b.dim == 0 || b.dim == 1, errc::invalid_argument,
          "surface bounding needs a cycle of dimension zero or one");
  SurfaceMesh mesh = model.kind() == "flat-torus" ? torus_grid(scale) : icosphere(scale);
  if (b.dim == 0)
    return surface_point_bounding(model, mesh, b, model.kind() == "flat-torus" ? scale : 0);
  EdgeChain snapped = model.kind() == "flat-torus" ? snap_to_torus_grid(b, scale)
                                                   : snap_to_sphere_mesh(mesh, b);
  PLChain out = surface_bounding(model, mesh, snapped);
  PLChain diff = chain_add(model, boundary(model, out),
                           chain_scale(-1, edge_chain_to_pl(model, mesh, snapped)));
  require(diff.is_zero(), errc::internal, "surface bounding chain failed its boundary check");
  return out;
}

long long linking_number(const ManifoldModel& model, const PLChain& b_minus_in,
                         const PLChain& b_plus_in, unsigned long long seed, int mesh_scale,
                         bool recheck_refined) {
  PLChain b_minus = canonical(model, b_minus_in);
  PLChain b_plus = canonical(model, b_plus_in);
  if (b_minus.is_zero() || b_plus.is_zero()) return 0;
  int n = model.dimension();
  require(b_minus.dim + b_plus.dim == n - 1, errc::invalid_argument,
          "linked cycles must have complementary codimension-one dimensions");
  require(boundary(model, b_minus).is_zero() && boundary(model, b_plus).is_zero(),
          errc::invalid_argument, "linking numbers are defined for cycles");

  double margin = kTolScale * model.diameter();
  for (const auto& cell : b_minus.cells)
    for (const auto& v : cell.verts)
      require(carrier_distance(model, b_plus, v) > margin, errc::carriers_intersect,
              "the two cycle carriers touch");
  for (const auto& cell : b_plus.cells)
    for (const auto& v : cell.verts)
      require(carrier_distance(model, b_minus, v) > margin, errc::carriers_intersect,
              "the two cycle carriers touch");

  int scale = mesh_scale > 0 ? mesh_scale : default_mesh_scale(model);
  PLChain filling = bounding_chain(model, b_plus, scale);
  bounding_chain(model, b_minus, scale);  // both classes must vanish
  long long lk = intersection_number(model, b_minus, filling, seed);
  if (recheck_refined) {
    PLChain refined = bounding_chain(model, b_plus, refine_mesh_scale(model, scale));
    long long again = intersection_number(model, b_minus, refined, seed);
    require(again == lk, errc::internal, "linking number changed under mesh refinement");
  }
  return lk;
}

std::string linking_csv(const std::vector<LinkRecord>& rows) {
  std::ostringstream out;
  out << "k,lk,mesh_scale,jitter_seed\n";
  for (const auto& r : rows)
    out << r.k << "," << r.lk << "," << r.mesh_scale << "," << r.jitter_seed << "\n";
  return out.str();
}

}  // namespace morselink::pl
