#include "pl/plchain.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "core/error.hpp"

namespace morselink::pl {

namespace {

using geom::vadd;
using geom::vcross;
using geom::vdot;
using geom::vnorm;
using geom::vnormalize;
using geom::vscale;
using geom::vsub;

bool vec_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Shift that moves the first vertex into the canonical chart. Flat models are
// shifted by exact integers (or whole circumferences), so coincident cells
// built in different covering sheets stay bitwise equal.
Vec chart_shift(const ManifoldModel& model, const Vec& v0) {
  if (model.kind() == "flat-torus") return {std::floor(v0[0]), std::floor(v0[1]), 0.0};
  if (model.kind() == "circle-union") {
    double L = model.component_length(static_cast<int>(v0[0]));
    return {0.0, L * std::floor(v0[1] / L), 0.0};
  }
  return {0.0, 0.0, 0.0};
}

// Orientation first, translation second: lex order is unchanged when every
// vertex carries the same sheet shift, so both presentations of a shared cell
// settle on the same first vertex and hence the same (exact, integer) shift.
PLCell canonical_cell(const ManifoldModel& model, const PLCell& in) {
  PLCell c = in;
  if (c.verts.size() == 2) {
    if (vec_less(c.verts[1], c.verts[0])) {
      std::swap(c.verts[0], c.verts[1]);
      c.mult = -c.mult;
    }
  } else if (c.verts.size() == 3) {
    int lo = 0;
    for (int i = 1; i < 3; ++i)
      if (vec_less(c.verts[i], c.verts[lo])) lo = i;
    std::rotate(c.verts.begin(), c.verts.begin() + lo, c.verts.end());
    if (vec_less(c.verts[2], c.verts[1])) {
      std::swap(c.verts[1], c.verts[2]);
      c.mult = -c.mult;
    }
  }
  Vec shift = chart_shift(model, c.verts[0]);
  if (shift[0] != 0.0 || shift[1] != 0.0)
    for (auto& v : c.verts) v = vsub(v, shift);
  return c;
}

bool degenerate_cell(const PLCell& c) {
  for (size_t i = 0; i < c.verts.size(); ++i)
    for (size_t j = i + 1; j < c.verts.size(); ++j)
      if (c.verts[i] == c.verts[j]) return true;
  return false;
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  Vec d = vsub(b, a);
  double den = vdot(d, d);
  double t = den > 0 ? std::clamp(vdot(vsub(p, a), d) / den, 0.0, 1.0) : 0.0;
  return vnorm(vsub(p, vadd(a, vscale(t, d))));
}

double point_triangle_distance(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  // Distance to the plane if the foot lies inside, else to the edges.
  Vec n = vcross(vsub(b, a), vsub(c, a));
  double nn = vdot(n, n);
  if (nn > 0) {
    double h = vdot(vsub(p, a), n) / std::sqrt(nn);
    Vec foot = vsub(p, vscale(h / std::sqrt(nn), n));
    // Barycentric test for the foot.
    Vec v0 = vsub(b, a), v1 = vsub(c, a), v2 = vsub(foot, a);
    double d00 = vdot(v0, v0), d01 = vdot(v0, v1), d11 = vdot(v1, v1);
    double d20 = vdot(v2, v0), d21 = vdot(v2, v1);
    double den = d00 * d11 - d01 * d01;
    if (den > 0) {
      double v = (d11 * d20 - d01 * d21) / den;
      double w = (d00 * d21 - d01 * d20) / den;
      if (v >= 0 && w >= 0 && v + w <= 1) return std::fabs(h);
    }
  }
  return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                   point_segment_distance(p, c, a)});
}

}  // namespace

PLChain canonical(const ManifoldModel& model, const PLChain& chain) {
  std::map<std::vector<double>, PLCell> merged;
  for (const auto& cell : chain.cells) {
    require(cell.dim() == chain.dim, errc::degenerate_cell,
            "cell dimension does not match the chain");
    if (cell.mult == 0) continue;
    PLCell c = canonical_cell(model, cell);
    if (degenerate_cell(c)) continue;
    std::vector<double> key;
    key.reserve(c.verts.size() * 3);
    for (const auto& v : c.verts)
      for (int i = 0; i < 3; ++i) key.push_back(v[i]);
    auto [it, fresh] = merged.emplace(std::move(key), c);
    if (!fresh) it->second.mult += c.mult;
  }
  PLChain out;
  out.dim = chain.dim;
  for (auto& [key, cell] : merged)
    if (cell.mult != 0) out.cells.push_back(std::move(cell));
  return out;
}

PLChain chain_add(const ManifoldModel& model, const PLChain& a, const PLChain& b) {
  require(a.dim == b.dim || a.is_zero() || b.is_zero(), errc::invalid_argument,
          "cannot add chains of different dimensions");
  PLChain sum;
  sum.dim = a.is_zero() ? b.dim : a.dim;
  sum.cells = a.cells;
  sum.cells.insert(sum.cells.end(), b.cells.begin(), b.cells.end());
  return canonical(model, sum);
}

PLChain chain_scale(long long s, const PLChain& a) {
  PLChain out = a;
  if (s == 0) {
    out.cells.clear();
    return out;
  }
  for (auto& c : out.cells) c.mult *= s;
  return out;
}

PLChain boundary(const ManifoldModel& model, const PLChain& chain) {
  PLChain out;
  out.dim = std::max(chain.dim - 1, 0);
  if (chain.dim == 0) return out;
  for (const auto& c : chain.cells) {
    if (chain.dim == 1) {
      out.cells.push_back({{c.verts[1]}, c.mult});
      out.cells.push_back({{c.verts[0]}, -c.mult});
    } else {
      out.cells.push_back({{c.verts[0], c.verts[1]}, c.mult});
      out.cells.push_back({{c.verts[1], c.verts[2]}, c.mult});
      out.cells.push_back({{c.verts[2], c.verts[0]}, c.mult});
    }
  }
  return canonical(model, out);
}

long long total_multiplicity(const PLChain& chain) {
  long long total = 0;
  for (const auto& c : chain.cells) total += c.mult;
  return total;
}

std::pair<double, double> f_range(const ManifoldModel& model, const PLChain& chain) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& c : chain.cells)
    for (const auto& v : c.verts) {
      double fv = model.f(model.wrap(v));
      lo = std::min(lo, fv);
      hi = std::max(hi, fv);
    }
  return {lo, hi};
}

double carrier_distance(const ManifoldModel& model, const PLChain& chain, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : chain.cells) {
    if (model.kind() == "circle-union") {
      if (static_cast<int>(c.verts[0][0]) != static_cast<int>(x[0])) continue;
      double L = model.component_length(static_cast<int>(x[0]));
      if (c.verts.size() == 1) {
        best = std::min(best, model.dist(x, c.verts[0]));
      } else {
        double a = std::min(c.verts[0][1], c.verts[1][1]);
        double b = std::max(c.verts[0][1], c.verts[1][1]);
        double s = model.wrap(x)[1];
        for (int k = -1; k <= 1; ++k) {
          double sk = s + k * L;
          double d = (sk < a) ? a - sk : (sk > b ? sk - b : 0.0);
          best = std::min(best, d);
        }
      }
      continue;
    }
    bool torus = model.kind() == "flat-torus";
    Vec xw = model.wrap(x);
    int lo = torus ? -1 : 0, hi = torus ? 1 : 0;
    for (int i = lo; i <= hi; ++i)
      for (int j = lo; j <= hi; ++j) {
        Vec p = torus ? Vec{xw[0] + i, xw[1] + j, 0.0} : xw;
        double d;
        if (c.verts.size() == 1)
          d = vnorm(vsub(p, c.verts[0]));
        else if (c.verts.size() == 2)
          d = point_segment_distance(p, c.verts[0], c.verts[1]);
        else
          d = point_triangle_distance(p, c.verts[0], c.verts[1], c.verts[2]);
        best = std::min(best, d);
      }
  }
  return best;
}

long long winding_multiplicity(const ManifoldModel& model, const PLChain& chain, const Vec& x) {
  long long total = 0;
  if (model.kind() == "circle-union") {
    require(chain.dim == 1, errc::invalid_argument, "winding needs a top-dimensional chain");
    double s = model.wrap(x)[1];
    for (const auto& c : chain.cells) {
      if (static_cast<int>(c.verts[0][0]) != static_cast<int>(model.wrap(x)[0])) continue;
      double L = model.component_length(static_cast<int>(x[0]));
      double s0 = c.verts[0][1], s1 = c.verts[1][1];
      double a = std::min(s0, s1), b = std::max(s0, s1);
      int orient = s1 > s0 ? 1 : -1;
      for (int k = -1; k <= 1; ++k) {
        double sk = s + k * L;
        if (sk > a && sk < b) total += orient * c.mult;
      }
    }
    return total;
  }

  require(chain.dim == 2, errc::invalid_argument, "winding needs a top-dimensional chain");
  if (model.kind() == "flat-torus") {
    Vec xw = model.wrap(x);
    for (const auto& c : chain.cells) {
      Vec e0 = vsub(c.verts[1], c.verts[0]);
      Vec e1 = vsub(c.verts[2], c.verts[1]);
      Vec e2 = vsub(c.verts[0], c.verts[2]);
      double area = cross2(e0, vsub(c.verts[2], c.verts[0]));
      if (area == 0.0) continue;
      int s = area > 0 ? 1 : -1;
      for (int i = -1; i <= 2; ++i)
        for (int j = -1; j <= 2; ++j) {
          Vec p = {xw[0] + i, xw[1] + j, 0.0};
          double d0 = cross2(e0, vsub(p, c.verts[0])) * s;
          double d1 = cross2(e1, vsub(p, c.verts[1])) * s;
          double d2 = cross2(e2, vsub(p, c.verts[2])) * s;
          if (d0 > 0 && d1 > 0 && d2 > 0) total += s * c.mult;
        }
    }
    return total;
  }

  // Sphere: central projection of x onto each triangle.
  Vec xu = model.wrap(x);
  for (const auto& c : chain.cells) {
    const Vec &a = c.verts[0], &b = c.verts[1], &d = c.verts[2];
    double det = vdot(a, vcross(b, d));
    if (det == 0.0) continue;
    // Solve alpha a + beta b + gamma d = xu by Cramer's rule.
    double alpha = vdot(xu, vcross(b, d)) / det;
    double beta = vdot(a, vcross(xu, d)) / det;
    double gamma = vdot(a, vcross(b, xu)) / det;
    if (alpha > 0 && beta > 0 && gamma > 0) total += (det > 0 ? 1 : -1) * c.mult;
  }
  return total;
}

std::optional<SegmentCrossing> segment_crossing(const ManifoldModel& model, const Vec& a0,
                                                const Vec& a1, const Vec& b0, const Vec& b1,
                                                double endpoint_tol) {
  if (model.kind() == "flat-torus" || model.kind() == "circle-union") {
    require(model.kind() == "flat-torus", errc::internal,
            "segment crossings are a surface operation");
    Vec da = vsub(a1, a0);
    Vec db = vsub(b1, b0);
    double denom = cross2(da, db);
    double scale = vnorm(da) * vnorm(db);
    if (scale == 0.0) return std::nullopt;
    if (std::fabs(denom) < 1e-12 * scale) {
      // Parallel in every sheet: only worth flagging if the carriers touch
      // (either segment's endpoint near the other segment).
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
          Vec s = {static_cast<double>(i), static_cast<double>(j), 0.0};
          Vec c0 = vadd(b0, s), c1 = vadd(b1, s);
          if (point_segment_distance(c0, a0, a1) < endpoint_tol ||
              point_segment_distance(c1, a0, a1) < endpoint_tol ||
              point_segment_distance(a0, c0, c1) < endpoint_tol ||
              point_segment_distance(a1, c0, c1) < endpoint_tol) {
            SegmentCrossing sc;
            sc.near_parallel = true;
            return sc;
          }
        }
      return std::nullopt;
    }
    std::optional<SegmentCrossing> found;
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        Vec s = {static_cast<double>(i), static_cast<double>(j), 0.0};
        Vec c0 = vadd(b0, s);
        double t = cross2(vsub(c0, a0), db) / denom;
        double u = cross2(vsub(c0, a0), da) / denom;
        if (t < 0 || t > 1 || u < 0 || u > 1) continue;
        SegmentCrossing sc;
        sc.t = t;
        sc.u = u;
        sc.sign = denom > 0 ? 1 : -1;
        sc.point = vadd(a0, vscale(t, da));
        double la = vnorm(da), lb = vnorm(db);
        sc.near_endpoint = std::min(t, 1 - t) * la < endpoint_tol ||
                           std::min(u, 1 - u) * lb < endpoint_tol;
        if (found) fail(errc::internal, "segment crossing matched in two covering sheets");
        found = sc;
      }
    return found;
  }

  // Sphere: intersect the two great-circle arcs spanned by the chords.
  Vec na = vcross(a0, a1);
  Vec nb = vcross(b0, b1);
  Vec w = vcross(na, nb);
  double wn = vnorm(w);
  double scale = vnorm(na) * vnorm(nb);
  if (scale == 0.0) return std::nullopt;
  if (wn < 1e-12 * scale) {
    // Same great circle: flag when the angular spans overlap.
    auto ang = [](const Vec& p, const Vec& q) {
      return std::acos(std::clamp(vdot(vnormalize(p), vnormalize(q)), -1.0, 1.0));
    };
    auto on_arc = [&](const Vec& p0, const Vec& p1, const Vec& q) {
      return ang(p0, q) + ang(q, p1) <= ang(p0, p1) + endpoint_tol;
    };
    if (on_arc(a0, a1, b0) || on_arc(a0, a1, b1) || on_arc(b0, b1, a0) || on_arc(b0, b1, a1)) {
      SegmentCrossing sc;
      sc.near_parallel = true;
      return sc;
    }
    return std::nullopt;
  }
  w = vscale(1.0 / wn, w);
  std::optional<SegmentCrossing> found;
  for (int flip = 0; flip < 2; ++flip) {
    Vec cand = flip ? vscale(-1.0, w) : w;
    // Chord coefficients of cand along each segment (2x2 Gram solves).
    auto chord_params = [](const Vec& p, const Vec& q, const Vec& y) {
      double pp = vdot(p, p), pq = vdot(p, q), qq = vdot(q, q);
      double yp = vdot(y, p), yq = vdot(y, q);
      double den = pp * qq - pq * pq;
      double al = (yp * qq - yq * pq) / den;
      double be = (yq * pp - yp * pq) / den;
      return std::pair<double, double>(al, be);
    };
    auto [aa, ab] = chord_params(a0, a1, cand);
    auto [ba, bb] = chord_params(b0, b1, cand);
    if (aa < 0 || ab < 0 || ba < 0 || bb < 0) continue;
    SegmentCrossing sc;
    sc.t = ab / (aa + ab);
    sc.u = bb / (ba + bb);
    sc.point = cand;
    Vec da = vsub(a1, a0), db = vsub(b1, b0);
    double orient = vdot(vcross(da, db), cand);
    sc.sign = orient > 0 ? 1 : -1;
    double la = vnorm(da), lb = vnorm(db);
    sc.near_endpoint = std::min(sc.t, 1 - sc.t) * la < endpoint_tol ||
                       std::min(sc.u, 1 - sc.u) * lb < endpoint_tol;
    if (found) fail(errc::internal, "antipodal arc crossing ambiguity");
    found = sc;
  }
  return found;
}

std::string to_json(const PLChain& chain) {
  nlohmann::json j;
  j["dim"] = chain.dim;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : chain.cells) {
    nlohmann::json jc;
    jc["vertices"] = nlohmann::json::array();
    for (const auto& v : c.verts) jc["vertices"].push_back({v[0], v[1], v[2]});
    jc["multiplicity"] = c.mult;
    j["cells"].push_back(jc);
  }
  return j.dump(2);
}

PLChain from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  require(!j.is_discarded(), errc::parse_error, "invalid chain JSON");
  PLChain chain;
  require(j.contains("dim") && j.contains("cells"), errc::parse_error,
          "chain JSON needs dim and cells");
  chain.dim = j["dim"].get<int>();
  for (const auto& jc : j["cells"]) {
    PLCell c;
    c.mult = jc["multiplicity"].get<long long>();
    for (const auto& jv : jc["vertices"]) {
      require(jv.size() == 3, errc::parse_error, "vertices are coordinate triples");
      c.verts.push_back({jv[0].get<double>(), jv[1].get<double>(), jv[2].get<double>()});
    }
    require(c.dim() == chain.dim, errc::parse_error, "cell dimension mismatch in chain JSON");
    chain.cells.push_back(std::move(c));
  }
  return chain;
}

}  // namespace morselink::pl
