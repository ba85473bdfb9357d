#include "geom/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "core/error.hpp"

namespace morselink::geom {

namespace {

// Guards a shot trajectory against measure-zero saddle connections: grazing
// another saddle ball essentially on its stable set means the shot sits on a
// saddle-to-saddle orbit.
void check_transverse(const MorseSystem& sys, const std::string& from, const Trajectory& traj) {
  if (traj.converged_at_saddle)
    fail(errc::nontransverse_connection,
         from + " shot trajectory converged to saddle " + traj.end_id);
  for (const auto& ev : traj.events) {
    if (ev.crit_id == from) continue;
    const CriticalPoint& c = sys.by_id(ev.crit_id);
    if (ev.min_dist < 1e-4 * c.detection_radius)
      fail(errc::nontransverse_connection,
           from + " shot trajectory grazes saddle " + ev.crit_id);
  }
}

}  // namespace

const CriticalPoint& MorseSystem::by_id(const std::string& id) const {
  for (const auto& c : crits)
    if (c.id == id) return c;
  fail(errc::internal, "unknown critical point " + id);
}

FlowContext MorseSystem::context(int sign) const {
  FlowContext ctx;
  ctx.model = model.get();
  ctx.crits = &crits;
  ctx.sign = sign;
  return ctx;
}

MorseSystem make_system(std::shared_ptr<const ManifoldModel> model) {
  MorseSystem sys;
  sys.crits = locate_critical_points(*model);
  sys.model = std::move(model);
  return sys;
}

std::vector<Connection> count_flowlines(const MorseSystem& sys, int sign) {
  const ManifoldModel& model = *sys.model;
  FlowContext ctx = sys.context(sign);
  FlowContext back = sys.context(-sign);
  std::vector<Connection> out;

  // Both manifolds of a saddle are one-dimensional curves, so every flowline
  // with the saddle as an endpoint is found by shooting the two ends of the
  // corresponding eigendirection: downhill along the unstable directions for
  // the flowlines out of the saddle, uphill along the stable directions for
  // the flowlines into it. The launch side doubles as the side flag that
  // carries the orientation sign.
  for (const auto& q : sys.crits) {
    if (ctx.effective_index(q) != 1) continue;
    double delta = std::min(1e-6, 0.05 * q.detection_radius);

    Vec e_u = ctx.unstable_dir(q);
    for (int side : {+1, -1}) {
      Vec x0 = model.step(q.coords, vscale(side * delta, e_u));
      Trajectory traj = integrate_flow(ctx, x0);
      check_transverse(sys, q.id, traj);
      const CriticalPoint& sink = sys.by_id(traj.end_id);
      require(ctx.effective_index(sink) == 0, errc::internal,
              "unstable trajectory of " + q.id + " ended at " + sink.id);
      // Close the polyline exactly: saddle first, sink last, in the
      // trajectory's own covering chart.
      Trajectory closed;
      closed.pts.push_back(q.coords);
      closed.fvals.push_back(q.value);
      closed.pts.insert(closed.pts.end(), traj.pts.begin(), traj.pts.end());
      closed.fvals.insert(closed.fvals.end(), traj.fvals.begin(), traj.fvals.end());
      Vec last = closed.pts.back();
      closed.pts.push_back(vadd(last, model.displacement(last, sink.coords)));
      closed.fvals.push_back(sink.value);
      closed.events = traj.events;
      closed.end_id = traj.end_id;
      out.push_back({q.id, sink.id, side, side > 0 ? 0.0 : M_PI, std::move(closed)});
    }

    if (model.dimension() < 2) continue;
    Vec s_s = ctx.stable_dir(q);
    for (int side : {+1, -1}) {
      Vec x0 = model.step(q.coords, vscale(side * delta, s_s));
      Trajectory traj = integrate_flow(back, x0);
      check_transverse(sys, q.id, traj);
      const CriticalPoint& src = sys.by_id(traj.end_id);
      require(ctx.effective_index(src) == 2, errc::internal,
              "stable trajectory of " + q.id + " ended at " + src.id);
      // Reverse into a descending polyline from the source to the saddle.
      Trajectory desc;
      desc.pts.push_back(vadd(traj.pts.back(),
                              model.displacement(traj.pts.back(), src.coords)));
      desc.fvals.push_back(src.value);
      for (size_t i = traj.pts.size(); i-- > 0;) {
        desc.pts.push_back(traj.pts[i]);
        desc.fvals.push_back(traj.fvals[i]);
      }
      Vec last = desc.pts.back();
      desc.pts.push_back(vadd(last, model.displacement(last, q.coords)));
      desc.fvals.push_back(q.value);
      desc.end_id = q.id;
      // The flowline arrives at the saddle on the side it was launched from.
      out.push_back({src.id, q.id, -side, side > 0 ? 0.0 : M_PI, std::move(desc)});
    }
  }

  std::sort(out.begin(), out.end(), [](const Connection& a, const Connection& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.angle < b.angle;
  });
  return out;
}

alg::FilteredComplex connection_complex(const MorseSystem& sys,
                                        const std::vector<Connection>& conns, int sign,
                                        const alg::Ring& ring) {
  int n = sys.model->dimension();
  std::vector<alg::Generator> gens;
  for (const auto& c : sys.crits) {
    int degree = sign > 0 ? c.index : n - c.index;
    double level = sign > 0 ? c.value : -c.value;
    gens.push_back({c.id, degree, level});
  }

  std::map<std::string, std::map<std::string, long>> coeff;
  for (const auto& conn : conns) coeff[conn.from][conn.to] += conn.sign;

  std::map<std::string, alg::Chain> boundary;
  for (const auto& [from, row] : coeff) {
    alg::Chain ch;
    int degree = sign > 0 ? sys.by_id(from).index : n - sys.by_id(from).index;
    ch.degree = degree - 1;
    for (const auto& [to, v] : row) {
      if (v == 0) continue;
      ch.coeffs[to] = ring.from_int(v);
    }
    if (!ch.coeffs.empty()) boundary[from] = std::move(ch);
  }
  return alg::FilteredComplex::make(n, ring, std::move(gens), std::move(boundary));
}

alg::Chain MorseData::fundamental(int sign) const {
  const alg::FilteredComplex& cx = complex(sign);
  alg::Chain m;
  m.degree = cx.dimension();
  for (const auto& id : cx.basis(cx.dimension())) m.coeffs[id] = cx.ring().from_int(1);
  return m;
}

MorseData build_morse_data(std::shared_ptr<const ManifoldModel> model) {
  MorseSystem sys = make_system(std::move(model));
  std::vector<Connection> conns_f = count_flowlines(sys, +1);
  std::vector<Connection> conns_neg = count_flowlines(sys, -1);
  const alg::Ring ring = alg::Ring::integers();
  alg::FilteredComplex cx_f = connection_complex(sys, conns_f, +1, ring);
  alg::FilteredComplex cx_neg = connection_complex(sys, conns_neg, -1, ring);

  MorseData md{std::move(sys), std::move(conns_f), std::move(conns_neg), std::move(cx_f),
               std::move(cx_neg)};

  for (int sign : {+1, -1}) {
    alg::Chain m = md.fundamental(sign);
    if (!md.complex(sign).d(m).is_zero())
      fail(errc::internal, std::string("fundamental cycle of the ") +
                               (sign > 0 ? "descending" : "reversed") + " flow is not closed");
  }

  alg::FilteredComplex dual = alg::dual_complex(md.cx_f);
  for (const auto& g : md.cx_neg.generators()) {
    const alg::Chain& a = md.cx_neg.d(g.id);
    const alg::Chain& b = dual.d(g.id);
    auto keys = a.coeffs;
    for (const auto& [k, v] : b.coeffs) keys.emplace(k, ring.from_int(0));
    for (const auto& [k, unused] : keys) {
      alg::Scalar va = a.coeffs.count(k) ? a.coeffs.at(k) : ring.from_int(0);
      alg::Scalar vb = b.coeffs.count(k) ? b.coeffs.at(k) : ring.from_int(0);
      if (!ring.is_zero(ring.sub(va, vb)))
        fail(errc::dualm_violation, "reversed-flow boundary of " + g.id + " at " + k +
                                        " disagrees with the dual complex");
    }
  }
  return md;
}

std::string connections_csv(const std::vector<Connection>& conns) {
  std::string out = "source,sink,sign,samples\n";
  for (const auto& c : conns) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%zu\n", c.from.c_str(), c.to.c_str(), c.sign,
                  c.traj.pts.size());
    out += buf;
  }
  return out;
}

}  // namespace morselink::geom
