#include "geom/integrate.hpp"

#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace morselink::geom {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

struct SaddleState {
  const CriticalPoint* crit = nullptr;
  bool inside = false;
  int entry_side = 0;
  double min_dist = 0.0;
};

bool finite_vec(const Vec& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace

std::string itinerary_key(const Trajectory& t) {
  std::string key;
  for (const auto& ev : t.events) {
    key += ev.crit_id;
    key += ev.exit_side > 0 ? "+" : (ev.exit_side < 0 ? "-" : "0");
    key += "|";
  }
  key += t.converged_at_saddle ? "saddle:" : "sink:";
  key += t.end_id;
  return key;
}

Trajectory integrate_flow(const FlowContext& ctx, Vec x0) {
  const ManifoldModel& model = *ctx.model;
  const auto& crits = *ctx.crits;
  const double dir = -static_cast<double>(ctx.sign);

  auto velocity = [&](const Vec& y) { return vscale(dir, model.grad(model.wrap(y))); };

  // Capture and event bookkeeping.
  std::vector<SaddleState> saddles;
  std::vector<const CriticalPoint*> sinks;
  double min_det = std::numeric_limits<double>::infinity();
  for (const auto& c : crits) {
    min_det = std::min(min_det, c.detection_radius);
    int ei = ctx.effective_index(c);
    if (ei == 1) {
      saddles.push_back({&c, false, 0, 0.0});
    } else if (ei == 0) {
      sinks.push_back(&c);
    }
  }

  const double chord_max = 0.25 * min_det;
  const double sink_grad_eps = 1e-8;
  // Far stricter than any transverse near-saddle dive can reach, so only a
  // trajectory launched exactly on a stable set ever trips it.
  const double stuck_grad_eps = 1e-12;

  Trajectory out;
  out.pts.push_back(x0);
  out.fvals.push_back(model.f(model.wrap(x0)));

  // Start-inside initialization so the first exit is still seen as an exit.
  for (auto& st : saddles) {
    double d = model.dist(x0, st.crit->coords);
    if (d < st.crit->detection_radius) {
      Vec delta = model.displacement(st.crit->coords, x0);
      st.inside = true;
      st.min_dist = d;
      double s = vdot(delta, ctx.stable_dir(*st.crit));
      st.entry_side = (s >= 0) ? +1 : -1;
    }
  }

  Vec x = x0;
  double h = 1e-4;
  Vec k1 = velocity(x);
  long long accepted = 0;

  while (true) {
    if (accepted >= ctx.max_steps)
      fail(errc::step_limit_exceeded,
           "flow integration exceeded " + std::to_string(ctx.max_steps) + " steps");
    if (!finite_vec(x) || vnorm(x) > 1e6)
      fail(errc::left_domain, "flow trajectory left the model domain");

    // One adaptive attempt.
    Vec k2 = velocity(model.step(x, vscale(h * kA21, k1)));
    Vec k3 = velocity(model.step(x, vadd(vscale(h * kA31, k1), vscale(h * kA32, k2))));
    Vec k4 = velocity(model.step(
        x, vadd(vadd(vscale(h * kA41, k1), vscale(h * kA42, k2)), vscale(h * kA43, k3))));
    Vec k5 = velocity(model.step(
        x, vadd(vadd(vscale(h * kA51, k1), vscale(h * kA52, k2)),
                vadd(vscale(h * kA53, k3), vscale(h * kA54, k4)))));
    Vec k6 = velocity(model.step(
        x, vadd(vadd(vscale(h * kA61, k1), vscale(h * kA62, k2)),
                vadd(vadd(vscale(h * kA63, k3), vscale(h * kA64, k4)), vscale(h * kA65, k5)))));
    Vec incr = vadd(vadd(vscale(kB1, k1), vscale(kB3, k3)),
                    vadd(vadd(vscale(kB4, k4), vscale(kB5, k5)), vscale(kB6, k6)));
    Vec x_new = model.step(x, vscale(h, incr));
    Vec k7 = velocity(x_new);
    Vec err_vec = vadd(vadd(vscale(kE1, k1), vscale(kE3, k3)),
                       vadd(vadd(vscale(kE4, k4), vscale(kE5, k5)),
                            vadd(vscale(kE6, k6), vscale(kE7, k7))));
    double err = h * vnorm(err_vec);
    double chord = h * vnorm(incr);

    if (err > ctx.tol || chord > chord_max) {
      double shrink = 0.5;
      if (err > ctx.tol) shrink = std::min(shrink, 0.9 * std::pow(ctx.tol / err, 0.2));
      if (chord > chord_max) shrink = std::min(shrink, 0.9 * chord_max / chord);
      h *= std::max(shrink, 0.05);
      if (h < 1e-14) fail(errc::step_limit_exceeded, "flow step size underflow");
      continue;
    }

    x = x_new;
    k1 = k7;  // FSAL
    ++accepted;
    out.pts.push_back(x);
    out.fvals.push_back(model.f(model.wrap(x)));

    double grow = (err > 0) ? 0.9 * std::pow(ctx.tol / err, 0.2) : 5.0;
    h *= std::min(std::max(grow, 0.2), 5.0);
    h = std::min(h, 1.0);

    // Saddle ball events.
    bool stopped = false;
    for (auto& st : saddles) {
      const CriticalPoint& c = *st.crit;
      double d = model.dist(x, c.coords);
      if (!st.inside) {
        if (d < c.detection_radius) {
          if (!ctx.stop_in_ball_of.empty() && c.id == ctx.stop_in_ball_of) {
            out.converged_at_saddle = true;
            out.end_id = c.id;
            stopped = true;
            break;
          }
          Vec delta = model.displacement(c.coords, x);
          st.inside = true;
          st.min_dist = d;
          double s = vdot(delta, ctx.stable_dir(c));
          st.entry_side = (s >= 0) ? +1 : -1;
        }
      } else {
        st.min_dist = std::min(st.min_dist, d);
        if (d >= c.detection_radius) {
          st.inside = false;
          Vec delta = model.displacement(c.coords, x);
          double u = vdot(delta, ctx.unstable_dir(c));
          out.events.push_back({c.id, (u >= 0) ? +1 : -1, st.entry_side, st.min_dist});
        }
      }
    }
    if (stopped) break;

    // Sink capture: vanishing gradient close to an effective minimum.
    Vec g = model.grad(model.wrap(x));
    double gn = vnorm(g);
    if (gn < sink_grad_eps) {
      const CriticalPoint* best = nullptr;
      double best_d = std::numeric_limits<double>::infinity();
      for (const auto* c : sinks) {
        double d = model.dist(x, c->coords);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (best != nullptr && best_d < 0.1 * best->detection_radius) {
        out.end_id = best->id;
        break;
      }
      // A truly vanishing gradient inside a saddle ball means the launch sat
      // exactly on a stable set; transverse passages never get this close.
      if (gn < stuck_grad_eps) {
        for (const auto& st : saddles) {
          double d = model.dist(x, st.crit->coords);
          if (d < 0.1 * st.crit->detection_radius) {
            out.converged_at_saddle = true;
            out.end_id = st.crit->id;
            stopped = true;
            break;
          }
        }
        if (stopped) break;
      }
    }
  }

  return out;
}

ThroughTrajectory trajectory_through(const FlowContext& ctx, const Vec& x) {
  Trajectory fwd = integrate_flow(ctx, x);
  FlowContext back = ctx;
  back.sign = -ctx.sign;
  back.stop_in_ball_of.clear();
  Trajectory bwd = integrate_flow(back, x);

  ThroughTrajectory out;
  out.source_id = bwd.end_id;
  Trajectory& t = out.traj;
  t.pts.reserve(bwd.pts.size() + fwd.pts.size());
  t.fvals.reserve(bwd.fvals.size() + fwd.fvals.size());
  for (size_t i = bwd.pts.size(); i-- > 1;) {
    t.pts.push_back(bwd.pts[i]);
    t.fvals.push_back(bwd.fvals[i]);
  }
  t.marked = static_cast<int>(t.pts.size());
  t.pts.insert(t.pts.end(), fwd.pts.begin(), fwd.pts.end());
  t.fvals.insert(t.fvals.end(), fwd.fvals.begin(), fwd.fvals.end());
  t.events = fwd.events;
  t.end_id = fwd.end_id;
  t.converged_at_saddle = fwd.converged_at_saddle;
  return out;
}

}  // namespace morselink::geom
