#include "geom/caps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "core/error.hpp"
#include "geom/integrate.hpp"

namespace morselink::geom {

namespace {
// Orientation constants of the counting rules. None of them is a free
// parameter: the set below is the unique sign assignment under which the
// boundary, adjunction and composition identities hold entrywise together
// with the frozen sign table, and the identity tests re-check all of them
// on every run.
constexpr long long kBasinCap = +1;      // point chain -> the flowline through it
constexpr long long kWindingCap = +1;    // top chain -> winding at the critical point
constexpr long long kCrossCap21 = +1;    // curve crossings of top-to-saddle flowlines
constexpr long long kCrossCap10 = +1;    // curve crossings of saddle-to-bottom flowlines
constexpr long long kPairCircle = +1;    // ordered point pairs on a circle arc
constexpr long long kPair21 = -1;        // ordered crossing pairs, top-to-saddle
constexpr long long kPair10 = -1;        // ordered crossing pairs, saddle-to-bottom
constexpr long long kPairAfter = +1;     // point hit, then curve crossing
constexpr long long kPairBefore = -1;    // curve crossing, then point hit
constexpr long long kProductPoint = -1;  // transverse curve-curve intersection points
}  // namespace

namespace {

using pl::PLCell;
using pl::PLChain;

constexpr double kEndpointTol = 1e-7;  // segment-parameter margin at joints
constexpr double kTolScale = 1e-9;     // ambient margins, relative to diameter

long long to_ll(const alg::Scalar& s) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  require(denominator(s.v) == 1, errc::internal, "expected an integer coefficient");
  return numerator(s.v).convert_to<long long>();
}

bool is_torus(const ManifoldModel& model) { return model.kind() == "flat-torus"; }

Vec floor_shift(const ManifoldModel& model, const Vec& x) {
  if (is_torus(model)) return {std::floor(x[0]), std::floor(x[1]), 0.0};
  return {0.0, 0.0, 0.0};
}

// A signed transverse incidence of a chain with a flowline polyline, at
// arc-length position tau along the polyline.
struct Incidence {
  double tau = 0.0;
  long long weight = 0;  // crossing sign times the cell multiplicity
};

// Crossings of a 1-chain with the polyline segments [seg_lo, seg_hi), sorted
// by position. Borderline crossings (near-parallel, or at a segment joint
// where the count would be ambiguous) throw NONTRANSVERSE_CROSSING.
std::vector<Incidence> polyline_crossings(const ManifoldModel& model, const std::vector<Vec>& pts,
                                          size_t seg_lo, size_t seg_hi, const PLChain& g) {
  std::vector<Incidence> out;
  if (g.is_zero() || pts.size() < 2) return out;
  require(g.dim == 1, errc::internal, "crossing enumeration needs a curve chain");

  // Chain cells shifted near the base chart once; the crossing search covers
  // the remaining relative offsets.
  std::vector<PLCell> cells = g.cells;
  for (auto& cell : cells) {
    Vec sh = floor_shift(model, cell.verts[0]);
    if (sh[0] != 0.0 || sh[1] != 0.0)
      for (auto& v : cell.verts) v = vsub(v, sh);
  }

  std::vector<double> cum(pts.size(), 0.0);
  for (size_t i = 0; i + 1 < pts.size(); ++i) cum[i + 1] = cum[i] + vnorm(vsub(pts[i + 1], pts[i]));

  for (size_t i = seg_lo; i < seg_hi; ++i) {
    Vec sh = floor_shift(model, pts[i]);
    Vec a0 = vsub(pts[i], sh), a1 = vsub(pts[i + 1], sh);
    double len = vnorm(vsub(a1, a0));
    if (len < 1e-15) continue;
    for (const auto& cell : cells) {
      auto cr = pl::segment_crossing(model, a0, a1, cell.verts[0], cell.verts[1], kEndpointTol);
      if (!cr) continue;
      if (cr->near_parallel || cr->near_endpoint)
        fail(errc::nontransverse_crossing, "borderline crossing of a flowline with the chain");
      out.push_back({cum[i] + cr->t * len, cr->sign * cell.mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Incidence& a, const Incidence& b) {
    return a.tau < b.tau;
  });
  return out;
}

// Full flowline through a point, closed exactly at its critical endpoints;
// throws NONTRANSVERSE_CROSSING when either limit is not an extremum of the
// flow (the point sits on a separatrix).
struct ThroughLine {
  std::vector<Vec> pts;
  size_t marked = 0;
  std::string source, sink;
};

ThroughLine closed_through(const MorseData& md, const FlowContext& ctx, const Vec& x) {
  const ManifoldModel& model = *md.sys.model;
  int n = model.dimension();
  ThroughTrajectory tt = trajectory_through(ctx, model.wrap(x));
  if (tt.traj.converged_at_saddle)
    fail(errc::nontransverse_crossing, "flowline through a chain point runs into a saddle");
  const CriticalPoint& src = md.sys.by_id(tt.source_id);
  const CriticalPoint& snk = md.sys.by_id(tt.traj.end_id);
  if (ctx.effective_index(src) != n || ctx.effective_index(snk) != 0)
    fail(errc::nontransverse_crossing, "flowline through a chain point is not generic");

  ThroughLine out;
  out.source = src.id;
  out.sink = snk.id;
  const std::vector<Vec>& p = tt.traj.pts;
  out.pts.reserve(p.size() + 2);
  out.pts.push_back(vadd(p.front(), model.displacement(p.front(), src.coords)));
  out.pts.insert(out.pts.end(), p.begin(), p.end());
  out.pts.push_back(vadd(p.back(), model.displacement(p.back(), snk.coords)));
  out.marked = static_cast<size_t>(tt.traj.marked) + 1;
  return out;
}

// A circle connection as a directed arc: base point, direction along the
// coordinate, and length. Arc positions grow in the flow direction.
struct CircleArc {
  const Connection* conn = nullptr;
  int component = 0;
  double s0 = 0.0;
  int dir = 0;
  double len = 0.0;
  double period = 0.0;
};

std::vector<CircleArc> circle_arcs(const MorseData& md, int sign_of_f) {
  std::vector<CircleArc> arcs;
  const ManifoldModel& model = *md.sys.model;
  for (const auto& conn : md.connections(sign_of_f)) {
    const std::vector<Vec>& p = conn.traj.pts;
    CircleArc a;
    a.conn = &conn;
    a.component = static_cast<int>(std::llround(p.front()[0]));
    a.s0 = p.front()[1];
    a.dir = p.back()[1] > a.s0 ? +1 : -1;
    a.len = std::fabs(p.back()[1] - a.s0);
    a.period = model.component_length(a.component);
    arcs.push_back(a);
  }
  return arcs;
}

std::optional<double> arc_position(const CircleArc& a, const Vec& wrapped) {
  if (static_cast<int>(std::llround(wrapped[0])) != a.component) return std::nullopt;
  double rel = std::fmod((wrapped[1] - a.s0) * a.dir, a.period);
  if (rel < 0) rel += a.period;
  if (rel <= 0.0 || rel >= a.len) return std::nullopt;
  return rel;
}

void require_carrier_clear(const ManifoldModel& model, const MorseSystem& sys, const PLChain& g) {
  for (const auto& c : sys.crits)
    require(pl::carrier_distance(model, g, c.coords) > c.trivialization_radius,
            errc::chain_too_close_to_critical,
            "chain carrier inside the trivialization ball of " + c.id);
}

// The cells' edge skeleton as a chain of one dimension lower (interior edges
// kept), used to keep evaluation points off the cell walls.
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

void guard_point_off_walls(const ManifoldModel& model, const PLChain& skeleton, const Vec& x,
                           const char* what) {
  if (skeleton.is_zero()) return;
  if (pl::carrier_distance(model, skeleton, x) < kTolScale * model.diameter())
    fail(errc::nontransverse_crossing, std::string(what) + " lies on a cell wall of the chain");
}

void check_flow_sign(int sign_of_f) {
  require(sign_of_f == 1 || sign_of_f == -1, errc::invalid_argument, "flow sign must be +1 or -1");
}

}  // namespace

void CountMap::add(const std::string& from, const std::string& to, long long c) {
  if (c == 0) return;
  auto& col = cols[from];
  long long& v = col[to];
  v += c;
  if (v == 0) {
    col.erase(to);
    if (col.empty()) cols.erase(from);
  }
}

long long CountMap::entry(const std::string& from, const std::string& to) const {
  auto it = cols.find(from);
  if (it == cols.end()) return 0;
  auto jt = it->second.find(to);
  return jt == it->second.end() ? 0 : jt->second;
}

bool CountMap::is_zero() const {
  for (const auto& [from, col] : cols)
    for (const auto& [to, v] : col)
      if (v != 0) return false;
  return true;
}

CountMap map_add(const CountMap& a, const CountMap& b) {
  CountMap out = a;
  for (const auto& [from, col] : b.cols)
    for (const auto& [to, v] : col) out.add(from, to, v);
  return out;
}

CountMap map_scale(long long s, const CountMap& a) {
  CountMap out;
  if (s == 0) return out;
  for (const auto& [from, col] : a.cols)
    for (const auto& [to, v] : col) out.add(from, to, s * v);
  return out;
}

CountMap map_compose(const CountMap& outer, const CountMap& inner) {
  CountMap out;
  for (const auto& [from, col] : inner.cols)
    for (const auto& [mid, v] : col) {
      auto it = outer.cols.find(mid);
      if (it == outer.cols.end()) continue;
      for (const auto& [to, w] : it->second) out.add(from, to, v * w);
    }
  return out;
}

long long max_abs_entry(const CountMap& m) {
  long long best = 0;
  for (const auto& [from, col] : m.cols)
    for (const auto& [to, v] : col) best = std::max(best, std::llabs(v));
  return best;
}

CountMap boundary_count_map(const alg::FilteredComplex& cx) {
  CountMap out;
  for (const auto& g : cx.generators())
    for (const auto& [to, c] : cx.d(g.id).coeffs) out.add(g.id, to, to_ll(c));
  return out;
}

std::vector<std::vector<long long>> degree_block(const alg::FilteredComplex& cx, const CountMap& m,
                                                 int degree_from, int degree_to) {
  const std::vector<std::string>& src = cx.basis(degree_from);
  const std::vector<std::string>& tgt = cx.basis(degree_to);
  std::vector<std::vector<long long>> block(tgt.size(), std::vector<long long>(src.size(), 0));
  for (size_t j = 0; j < src.size(); ++j) {
    auto it = m.cols.find(src[j]);
    if (it == m.cols.end()) continue;
    for (const auto& [to, v] : it->second) {
      auto pos = std::lower_bound(tgt.begin(), tgt.end(), to);
      if (pos != tgt.end() && *pos == to) block[pos - tgt.begin()][j] = v;
    }
  }
  return block;
}

alg::Chain apply_count_map(const alg::FilteredComplex& cx, const CountMap& m, const alg::Chain& x) {
  std::map<std::string, long long> acc;
  for (const auto& [id, c] : x.coeffs) {
    long long v = to_ll(c);
    if (v == 0) continue;
    auto it = m.cols.find(id);
    if (it == m.cols.end()) continue;
    for (const auto& [to, w] : it->second) acc[to] += v * w;
  }
  alg::Chain out;
  out.degree = x.degree;
  for (const auto& [to, v] : acc) {
    if (v == 0) continue;
    out.coeffs[to] = cx.ring().from_int(v);
    out.degree = cx.generator(to).degree;
  }
  return out;
}

CountMap cap_map(const MorseData& md, const pl::PLChain& g_in, int sign_of_f) {
  check_flow_sign(sign_of_f);
  const ManifoldModel& model = *md.sys.model;
  PLChain g = pl::canonical(model, g_in);
  CountMap out;
  if (g.is_zero()) return out;

  int n = model.dimension();
  int v = g.dim;
  require(v >= 0 && v <= n, errc::invalid_argument, "chain dimension out of range for the model");
  FlowContext ctx = md.sys.context(sign_of_f);

  if (v == n) {
    // Winding rule: the carrier may cover critical points, but its boundary
    // may not come near them and no cell wall may pass through one.
    PLChain bd = pl::boundary(model, g);
    if (!bd.is_zero()) require_carrier_clear(model, md.sys, bd);
    PLChain walls = cell_skeleton(g);
    for (const auto& c : md.sys.crits) {
      guard_point_off_walls(model, walls, c.coords, "critical point");
      long long w = pl::winding_multiplicity(model, g, c.coords);
      if (w != 0) out.add(c.id, c.id, kWindingCap * w);
    }
    return out;
  }

  require_carrier_clear(model, md.sys, g);

  if (v == 0) {
    if (n == 1) {
      std::vector<CircleArc> arcs = circle_arcs(md, sign_of_f);
      for (const auto& cell : g.cells) {
        Vec y = model.wrap(cell.verts[0]);
        int hits = 0;
        for (const auto& a : arcs)
          if (arc_position(a, y)) {
            out.add(a.conn->from, a.conn->to, kBasinCap * cell.mult);
            ++hits;
          }
        require(hits == 1, errc::internal,
                "chain point matched " + std::to_string(hits) + " arcs");
      }
    } else {
      for (const auto& cell : g.cells) {
        ThroughLine tl = closed_through(md, ctx, cell.verts[0]);
        out.add(tl.source, tl.sink, kBasinCap * cell.mult);
      }
    }
    return out;
  }

  // A curve on a surface: signed crossings with the isolated flowlines.
  for (const auto& conn : md.connections(sign_of_f)) {
    long long kappa = ctx.effective_index(md.sys.by_id(conn.from)) == 2 ? kCrossCap21
                                                                        : kCrossCap10;
    const std::vector<Vec>& pts = conn.traj.pts;
    for (const auto& inc : polyline_crossings(model, pts, 0, pts.size() - 1, g))
      out.add(conn.from, conn.to, kappa * conn.sign * inc.weight);
  }
  return out;
}

CountMap two_point_map(const MorseData& md, const pl::PLChain& g0_in, const pl::PLChain& g1_in,
                       int sign_of_f) {
  check_flow_sign(sign_of_f);
  const ManifoldModel& model = *md.sys.model;
  PLChain g0 = pl::canonical(model, g0_in);
  PLChain g1 = pl::canonical(model, g1_in);
  CountMap out;
  if (g0.is_zero() || g1.is_zero()) return out;

  int n = model.dimension();
  int v0 = g0.dim, v1 = g1.dim;
  require(v0 >= 0 && v0 <= n && v1 >= 0 && v1 <= n, errc::invalid_argument,
          "chain dimension out of range for the model");
  FlowContext ctx = md.sys.context(sign_of_f);
  double sim_tol = kTolScale * model.diameter();

  for (const PLChain* g : {&g0, &g1}) {
    if (g->dim == n) {
      PLChain bd = pl::boundary(model, *g);
      if (!bd.is_zero()) require_carrier_clear(model, md.sys, bd);
    } else {
      require_carrier_clear(model, md.sys, *g);
    }
  }

  if (n == 1 && v0 == 0 && v1 == 0) {
    // Ordered pairs of points on one arc, the first one strictly uphill of
    // the second; the sign carries the arc's direction along the coordinate.
    for (const auto& a : circle_arcs(md, sign_of_f)) {
      std::vector<std::pair<double, long long>> h0, h1;
      for (const auto& cell : g0.cells)
        if (auto pos = arc_position(a, model.wrap(cell.verts[0]))) h0.push_back({*pos, cell.mult});
      for (const auto& cell : g1.cells)
        if (auto pos = arc_position(a, model.wrap(cell.verts[0]))) h1.push_back({*pos, cell.mult});
      for (const auto& [p0, e0] : h0)
        for (const auto& [p1, e1] : h1) {
          if (std::fabs(p0 - p1) < sim_tol)
            fail(errc::simultaneous_crossing, "chain points coincide on one flowline");
          if (p0 < p1) out.add(a.conn->from, a.conn->to, kPairCircle * a.dir * e0 * e1);
        }
    }
    return out;
  }

  if (n == 2 && v0 == 1 && v1 == 1) {
    // Ordered crossing pairs on one isolated flowline.
    for (const auto& conn : md.connections(sign_of_f)) {
      long long kappa = ctx.effective_index(md.sys.by_id(conn.from)) == 2 ? kPair21
                                                                          : kPair10;
      const std::vector<Vec>& pts = conn.traj.pts;
      std::vector<Incidence> i0 = polyline_crossings(model, pts, 0, pts.size() - 1, g0);
      std::vector<Incidence> i1 = polyline_crossings(model, pts, 0, pts.size() - 1, g1);
      for (const auto& a : i0)
        for (const auto& b : i1) {
          if (std::fabs(a.tau - b.tau) < sim_tol)
            fail(errc::simultaneous_crossing, "both chains cross a flowline at one point");
          if (a.tau < b.tau)
            out.add(conn.from, conn.to, kappa * conn.sign * a.weight * b.weight);
        }
    }
    return out;
  }

  if (n == 2 && v0 == 0 && v1 == 1) {
    // The flowline through each point of g0, counted against its crossings
    // with g1 strictly after the marked point.
    for (const auto& cell : g0.cells) {
      if (pl::carrier_distance(model, g1, model.wrap(cell.verts[0])) < sim_tol)
        fail(errc::simultaneous_crossing, "point chain touches the curve carrier");
      ThroughLine tl = closed_through(md, ctx, cell.verts[0]);
      for (const auto& inc : polyline_crossings(model, tl.pts, tl.marked, tl.pts.size() - 1, g1))
        out.add(tl.source, tl.sink, kPairAfter * cell.mult * inc.weight);
    }
    return out;
  }

  if (n == 2 && v0 == 1 && v1 == 0) {
    // Mirror case: crossings with g0 strictly before the marked point.
    for (const auto& cell : g1.cells) {
      if (pl::carrier_distance(model, g0, model.wrap(cell.verts[0])) < sim_tol)
        fail(errc::simultaneous_crossing, "point chain touches the curve carrier");
      ThroughLine tl = closed_through(md, ctx, cell.verts[0]);
      for (const auto& inc : polyline_crossings(model, tl.pts, 0, tl.marked, g0))
        out.add(tl.source, tl.sink, kPairBefore * inc.weight * cell.mult);
    }
    return out;
  }

  // Every other dimension combination counts a negative-dimensional or
  // generically empty configuration space: the zero map.
  return out;
}

pl::PLChain chain_product(const ManifoldModel& model, const pl::PLChain& g0_in,
                          const pl::PLChain& g1_in) {
  PLChain g0 = pl::canonical(model, g0_in);
  PLChain g1 = pl::canonical(model, g1_in);
  int n = model.dimension();
  int v0 = g0.dim, v1 = g1.dim;

  PLChain out;
  out.dim = std::max(v0 + v1 - n, 0);
  if (g0.is_zero() || g1.is_zero() || v0 + v1 < n) return out;

  double tol = kTolScale * model.diameter();

  if (n == 1) {
    if (v0 == 0 && v1 == 1) {
      // Points of g0 weighted by the covering multiplicity of g1 there.
      for (const auto& cell : g0.cells) {
        Vec y = model.wrap(cell.verts[0]);
        guard_point_off_walls(model, cell_skeleton(g1), y, "product point");
        long long w = pl::winding_multiplicity(model, g1, y);
        if (w != 0) out.cells.push_back({{cell.verts[0]}, cell.mult * w});
      }
      return pl::canonical(model, out);
    }
    if (v0 == 1 && v1 == 0) {
      for (const auto& cell : g1.cells) {
        Vec y = model.wrap(cell.verts[0]);
        guard_point_off_walls(model, cell_skeleton(g0), y, "product point");
        long long w = pl::winding_multiplicity(model, g0, y);
        if (w != 0) out.cells.push_back({{cell.verts[0]}, w * cell.mult});
      }
      return pl::canonical(model, out);
    }
    // Two circle arcs: the overlap, weighted by the product of the oriented
    // multiplicities and laid out in the ascending direction. Overlaps that
    // degenerate to a point are wrap artifacts of full laps and count as
    // empty.
    for (const auto& ca : g0.cells) {
      int comp = static_cast<int>(std::llround(ca.verts[0][0]));
      double period = model.component_length(comp);
      double a0 = ca.verts[0][1], a1 = ca.verts[1][1];
      long long wa = (a1 > a0 ? 1 : -1) * ca.mult;
      double alo = std::min(a0, a1), ahi = std::max(a0, a1);
      for (const auto& cb : g1.cells) {
        if (static_cast<int>(std::llround(cb.verts[0][0])) != comp) continue;
        double b0 = cb.verts[0][1], b1 = cb.verts[1][1];
        long long wb = (b1 > b0 ? 1 : -1) * cb.mult;
        double blo = std::min(b0, b1), bhi = std::max(b0, b1);
        for (int k = -1; k <= 1; ++k) {
          double lo = std::max(alo, blo + k * period);
          double hi = std::min(ahi, bhi + k * period);
          if (hi - lo < tol) continue;
          out.cells.push_back({{{ca.verts[0][0], lo, 0.0}, {ca.verts[0][0], hi, 0.0}}, wa * wb});
        }
      }
    }
    return pl::canonical(model, out);
  }

  require(v0 == 1 && v1 == 1, errc::invalid_argument,
          "fiber products with a top-dimensional factor on a surface are not supported");

  // Transverse crossing points of two curves, signed against the surface
  // orientation.
  for (const auto& ca : g0.cells) {
    Vec sha = floor_shift(model, ca.verts[0]);
    Vec a0 = vsub(ca.verts[0], sha), a1 = vsub(ca.verts[1], sha);
    for (const auto& cb : g1.cells) {
      Vec shb = floor_shift(model, cb.verts[0]);
      Vec b0 = vsub(cb.verts[0], shb), b1 = vsub(cb.verts[1], shb);
      auto cr = pl::segment_crossing(model, a0, a1, b0, b1, kEndpointTol);
      if (!cr) continue;
      if (cr->near_parallel || cr->near_endpoint)
        fail(errc::nontransverse_crossing, "borderline intersection of the chain carriers");
      out.cells.push_back({{cr->point}, kProductPoint * cr->sign * ca.mult * cb.mult});
    }
  }
  return pl::canonical(model, out);
}

}  // namespace morselink::geom
