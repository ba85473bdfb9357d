#pragma once

#include <string>
#include <vector>

#include "geom/model.hpp"

namespace morselink::geom {

// One saddle-ball passage: which ball and on which side of the local
// outgoing eigendirection the trajectory left it (+1 / -1), or 0 if the
// trajectory converged inside the ball.
struct PassageEvent {
  std::string crit_id;
  int exit_side = 0;
  int entry_side = 0;      // side of the incoming eigendirection at entry
  double min_dist = 0.0;   // closest approach to the saddle while inside
};

struct Trajectory {
  std::vector<Vec> pts;        // unwrapped coordinates
  std::vector<double> fvals;   // f (not sign-adjusted) at the points
  std::vector<PassageEvent> events;
  std::string end_id;          // critical point reached (sink or converged saddle)
  bool converged_at_saddle = false;
  int marked = -1;             // index of a distinguished interior point, if any
};

// Shared immutable context for descending-flow integration. sign = +1 flows
// along -grad f, sign = -1 along +grad f (the descending flow of -f); the
// effective index of a critical point is index (sign=+1) or n-index (-1).
struct FlowContext {
  const ManifoldModel* model = nullptr;
  const std::vector<CriticalPoint>* crits = nullptr;
  int sign = +1;
  double tol = 1e-11;       // absolute per-step error target
  long long max_steps = 400000;
  // When nonempty, stop with converged_at_saddle as soon as the trajectory
  // enters the detection ball of this critical point (used when a separatrix
  // polyline should be truncated at its target saddle).
  std::string stop_in_ball_of;

  int effective_index(const CriticalPoint& c) const {
    return sign > 0 ? c.index : model->dimension() - c.index;
  }
  // Outgoing / incoming unit eigendirections of a saddle for this flow sign.
  Vec unstable_dir(const CriticalPoint& c) const {
    return sign > 0 ? c.unstable_frame[0] : c.stable_frame[0];
  }
  Vec stable_dir(const CriticalPoint& c) const {
    // 1d saddles (extrema) have no transverse direction; side flags are moot.
    if (sign > 0) return c.stable_frame.empty() ? Vec{0.0, 0.0, 0.0} : c.stable_frame[0];
    return c.unstable_frame.empty() ? Vec{0.0, 0.0, 0.0}
                                    : vscale(-1.0, c.unstable_frame[0]);
  }
};

// Integrates the descending flow from x0 until capture at an effective
// minimum (or convergence inside a saddle ball). Throws STEP_LIMIT_EXCEEDED
// or LEFT_DOMAIN.
Trajectory integrate_flow(const FlowContext& ctx, Vec x0);

// The full flowline through a regular point: backward limit (source), the
// marked point x, forward limit (sink). events/end refer to the forward
// half; source_id names the backward limit.
struct ThroughTrajectory {
  Trajectory traj;      // source-to-sink polyline, marked at x
  std::string source_id;
};
ThroughTrajectory trajectory_through(const FlowContext& ctx, const Vec& x);

// Itineraries (event list + endpoint) as comparable values.
std::string itinerary_key(const Trajectory& t);

}  // namespace morselink::geom
