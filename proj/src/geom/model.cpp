#include "geom/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace morselink::geom {

Vec vadd(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec vsub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec vscale(double s, const Vec& a) { return {s * a[0], s * a[1], s * a[2]}; }
double vdot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double vnorm(const Vec& a) { return std::sqrt(vdot(a, a)); }
Vec vcross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec vnormalize(const Vec& a) {
  double n = vnorm(a);
  if (n < 1e-300) fail(errc::internal, "cannot normalize zero vector");
  return vscale(1.0 / n, a);
}

int Census::total() const {
  int t = 0;
  for (int c : by_index) t += c;
  return t;
}

namespace {

// Compactly supported radial bump: psi(u) = exp(1/(u^2-1)) on [0,1), else 0.
double psi(double u) {
  if (u >= 1.0 - 1e-14) return 0.0;
  return std::exp(1.0 / (u * u - 1.0));
}
double psi_prime(double u) {
  if (u >= 1.0 - 1e-14 || u <= 0.0) return 0.0;
  double d = u * u - 1.0;
  return psi(u) * (-2.0 * u) / (d * d);
}

// Monotone slope profile on [0,1] with prescribed endpoint curvatures: the
// antiderivative pieces of w(t) = a*t(1-t)^2 + b*t^2(1-t) + c*t^2(1-t)^2.
double slope_A(double t) { return t * t / 2 - 2 * t * t * t / 3 + t * t * t * t / 4; }
double slope_B(double t) { return t * t * t / 3 - t * t * t * t / 4; }
double slope_C(double t) {
  return t * t * t / 3 - t * t * t * t / 2 + t * t * t * t * t / 5;
}
double slope_w(double a, double b, double c, double t) {
  double o = 1 - t;
  return a * t * o * o + b * t * t * o + c * t * t * o * o;
}

struct CircleArc {
  double s0 = 0, len = 0;   // arclength span [s0, s0+len]
  double va = 0, vb = 0;    // endpoint values
  double alpha = 0, beta = 0, gamma = 0;
  bool ascending = false;
};

struct CircleComponent {
  double length = 0;
  std::vector<double> crit_s;      // positions, alternating with crit_val
  std::vector<double> crit_val;    // starts with a maximum
  std::vector<CircleArc> arcs;
};

class CircleModel final : public ManifoldModel {
 public:
  CircleModel(std::string name, std::vector<CircleComponent> comps, Census census)
      : ManifoldModel(std::move(name), "circle-union", 1, 0, std::move(census),
                      max_length(comps)),
        comps_(std::move(comps)) {}

  double f(const Vec& x) const override {
    const CircleArc& arc = locate_arc(x);
    double t = (local_s(x) - arc.s0) / arc.len;
    double m = arc.len * (arc.alpha * slope_A(t) + arc.beta * slope_B(t) + arc.gamma * slope_C(t));
    return arc.ascending ? arc.va + m : arc.va - m;
  }

  Vec grad(const Vec& x) const override {
    const CircleArc& arc = locate_arc(x);
    double t = (local_s(x) - arc.s0) / arc.len;
    double w = slope_w(arc.alpha, arc.beta, arc.gamma, t);
    return {0.0, arc.ascending ? w : -w, 0.0};
  }

  Vec wrap(const Vec& x) const override {
    int c = component_of(x);
    double L = comps_[c].length;
    double s = std::fmod(x[1], L);
    if (s < 0) s += L;
    return {static_cast<double>(c), s, 0.0};
  }

  Vec step(const Vec& x, const Vec& v) const override { return {x[0], x[1] + v[1], 0.0}; }

  double dist(const Vec& a, const Vec& b) const override {
    if (component_of(a) != component_of(b)) return 1e18;
    double L = comps_[component_of(a)].length;
    double d = std::fabs(wrap(a)[1] - wrap(b)[1]);
    return std::min(d, L - d);
  }

  Vec displacement(const Vec& from, const Vec& to) const override {
    if (component_of(from) != component_of(to)) return {0.0, 1e18, 0.0};
    double L = comps_[component_of(from)].length;
    double d = std::fmod(to[1] - from[1], L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
    return {0.0, d, 0.0};
  }

  std::vector<Vec> tangent_basis(const Vec&) const override { return {{0.0, 1.0, 0.0}}; }

  int components() const override { return static_cast<int>(comps_.size()); }
  double component_length(int c) const override { return comps_[c].length; }

 private:
  static double max_length(const std::vector<CircleComponent>& comps) {
    double m = 0;
    for (const auto& c : comps) m = std::max(m, c.length);
    return m;
  }
  int component_of(const Vec& x) const {
    int c = static_cast<int>(std::llround(x[0]));
    if (c < 0 || c >= static_cast<int>(comps_.size()))
      fail(errc::left_domain, "circle component index out of range");
    return c;
  }
  double local_s(const Vec& x) const { return wrap(x)[1]; }
  const CircleArc& locate_arc(const Vec& x) const {
    const CircleComponent& comp = comps_[component_of(x)];
    double s = local_s(x);
    size_t lo = 0, hi = comp.arcs.size();
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (comp.arcs[mid].s0 <= s) lo = mid; else hi = mid;
    }
    return comp.arcs[lo];
  }

  std::vector<CircleComponent> comps_;
};

CircleComponent make_component(const std::vector<double>& values,
                               const std::vector<double>& lengths) {
  // values alternate max, min, max, min, ... around the circle (ccw).
  size_t n = values.size();
  require(n >= 2 && n % 2 == 0 && lengths.size() == n, errc::invalid_config,
          "circle component needs alternating extrema with matching arc lengths");
  CircleComponent comp;
  comp.crit_val = values;
  double s = 0;
  for (size_t i = 0; i < n; ++i) {
    comp.crit_s.push_back(s);
    s += lengths[i];
  }
  comp.length = s;
  for (size_t i = 0; i < n; ++i) {
    CircleArc arc;
    arc.s0 = comp.crit_s[i];
    arc.len = lengths[i];
    arc.va = values[i];
    arc.vb = values[(i + 1) % n];
    arc.ascending = arc.vb > arc.va;
    double rise = std::fabs(arc.vb - arc.va);
    arc.alpha = 2.0 * arc.len;  // unit curvature at both endpoints
    arc.beta = 2.0 * arc.len;
    arc.gamma = 30.0 * (rise / arc.len - (arc.alpha + arc.beta) / 12.0);
    require(arc.gamma >= 0.0, errc::invalid_config,
            "circle arc too long for its rise (profile not monotone)");
    comp.arcs.push_back(arc);
  }
  return comp;
}

class TorusModel final : public ManifoldModel {
 public:
  TorusModel(std::string name, double bump_amp, double bump_rad, double bump_cx, double bump_cy,
             double ay, Census census)
      : ManifoldModel(std::move(name), "flat-torus", 2, 0, std::move(census), 0.75),
        amp_(bump_amp), rad_(bump_rad), cx_(bump_cx), cy_(bump_cy), ay_(ay) {}

  double f(const Vec& x) const override {
    const double tau = 2.0 * M_PI;
    double base = std::cos(tau * x[0]) + ay_ * std::cos(tau * x[1]);
    double dx = wrap_delta(x[0] - cx_), dy = wrap_delta(x[1] - cy_);
    double r = std::sqrt(dx * dx + dy * dy);
    return base + amp_ * psi(r / rad_);
  }

  Vec grad(const Vec& x) const override {
    const double tau = 2.0 * M_PI;
    double gx = -tau * std::sin(tau * x[0]);
    double gy = -ay_ * tau * std::sin(tau * x[1]);
    double dx = wrap_delta(x[0] - cx_), dy = wrap_delta(x[1] - cy_);
    double r = std::sqrt(dx * dx + dy * dy);
    if (r > 1e-12 && r < rad_) {
      double dpsi = amp_ * psi_prime(r / rad_) / rad_;
      gx += dpsi * dx / r;
      gy += dpsi * dy / r;
    }
    return {gx, gy, 0.0};
  }

  Vec wrap(const Vec& x) const override {
    auto frac = [](double v) {
      double w = v - std::floor(v);
      return (w >= 1.0) ? 0.0 : w;
    };
    return {frac(x[0]), frac(x[1]), 0.0};
  }

  Vec step(const Vec& x, const Vec& v) const override {
    return {x[0] + v[0], x[1] + v[1], 0.0};
  }

  double dist(const Vec& a, const Vec& b) const override {
    double dx = wrap_delta(a[0] - b[0]);
    double dy = wrap_delta(a[1] - b[1]);
    return std::sqrt(dx * dx + dy * dy);
  }

  Vec displacement(const Vec& from, const Vec& to) const override {
    return {wrap_delta(to[0] - from[0]), wrap_delta(to[1] - from[1]), 0.0};
  }

  std::vector<Vec> tangent_basis(const Vec&) const override {
    return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  }

 private:
  static double wrap_delta(double d) {
    d -= std::floor(d);
    if (d > 0.5) d -= 1.0;
    return d;
  }
  double amp_, rad_, cx_, cy_, ay_;
};

class SphereModel final : public ManifoldModel {
 public:
  SphereModel(std::string name, double bump_amp, double bump_rad, Vec bump_center, Census census)
      : ManifoldModel(std::move(name), "embedded-sphere", 2, 2, std::move(census), M_PI),
        amp_(bump_amp), rad_(bump_rad), center_(bump_center) {}

  double f(const Vec& x) const override {
    double v = x[2] + 1.0;
    if (amp_ != 0.0) {
      double d = std::acos(std::clamp(vdot(x, center_), -1.0, 1.0));
      v += amp_ * psi(d / rad_);
    }
    return v;
  }

  Vec grad(const Vec& x) const override {
    // Tangential projection of the ambient gradient of z, plus the bump term.
    Vec g = {0.0, 0.0, 1.0};
    g = vsub(g, vscale(vdot(g, x), x));
    if (amp_ != 0.0) {
      double u = std::clamp(vdot(x, center_), -1.0, 1.0);
      double d = std::acos(u);
      if (d > 1e-9 && d < rad_) {
        double dpsi = amp_ * psi_prime(d / rad_) / rad_;
        double denom = std::sqrt(std::max(1.0 - u * u, 1e-30));
        Vec grad_d = vscale(-1.0 / denom, vsub(center_, vscale(u, x)));
        g = vadd(g, vscale(dpsi, grad_d));
      }
    }
    return g;
  }

  Vec wrap(const Vec& x) const override { return vnormalize(x); }
  Vec step(const Vec& x, const Vec& v) const override { return vnormalize(vadd(x, v)); }
  double dist(const Vec& a, const Vec& b) const override {
    return std::acos(std::clamp(vdot(vnormalize(a), vnormalize(b)), -1.0, 1.0));
  }

  Vec displacement(const Vec& from, const Vec& to) const override {
    return vsub(vnormalize(to), vnormalize(from));
  }

  std::vector<Vec> tangent_basis(const Vec& xin) const override {
    Vec x = vnormalize(xin);
    Vec ref = (std::fabs(x[2]) < 0.9) ? Vec{0.0, 0.0, 1.0} : Vec{1.0, 0.0, 0.0};
    Vec b1 = vnormalize(vcross(ref, x));
    Vec b2 = vcross(x, b1);  // (b1, b2, outward normal) right-handed
    return {b1, b2};
  }

 private:
  double amp_, rad_;
  Vec center_;
};

// Frozen side-bump constants for the two-maxima sphere: polar angle of the
// bump center and amplitude chosen so the secondary maximum sits at value
// 1.2 and the connecting saddle at 1.0 (radius fixed at 0.55).
constexpr double kSphereBumpRadius = 0.55;
constexpr double kSphereBumpAmp = 1.573639431034092;
constexpr double kSphereBumpTheta = 2.073098531589304;

}  // namespace

std::shared_ptr<const ManifoldModel> builtin_model(const std::string& name,
                                                   unsigned long long seed, int maxima) {
  if (name == "circle-a") {
    double q = M_PI / 2.0;
    std::vector<CircleComponent> comps = {
        make_component({4.0, 0.0, 3.0, 1.0}, {q, q, q, q})};
    return std::make_shared<CircleModel>(name, std::move(comps), Census{{2, 2}});
  }
  if (name == "circle-random") {
    require(maxima >= 2 && maxima <= 64, errc::invalid_config,
            "circle-random needs between 2 and 64 maxima");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> umax(2.0, 4.0), umin(0.0, 1.0), ulen(0.8, 1.2);
    std::vector<double> values, lengths;
    for (int attempt = 0; attempt < 256; ++attempt) {
      values.clear();
      lengths.clear();
      for (int i = 0; i < maxima; ++i) {
        values.push_back(umax(rng));
        values.push_back(umin(rng));
      }
      for (int i = 0; i < 2 * maxima; ++i) lengths.push_back(ulen(rng));
      std::vector<double> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      bool distinct = true;
      for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] < 1e-3) distinct = false;
      if (!distinct) continue;
      std::vector<CircleComponent> comps = {make_component(values, lengths)};
      return std::make_shared<CircleModel>(name, std::move(comps), Census{{maxima, maxima}});
    }
    fail(errc::invalid_config, "could not draw distinct circle-random levels");
  }
  if (name == "torus-c") {
    return std::make_shared<TorusModel>(name, 2.0, 0.15, 0.42, 0.0, 0.55, Census{{1, 3, 2}});
  }
  if (name == "sphere-b") {
    Vec c = {std::sin(kSphereBumpTheta), 0.0, std::cos(kSphereBumpTheta)};
    return std::make_shared<SphereModel>(name, kSphereBumpAmp, kSphereBumpRadius, c,
                                         Census{{1, 1, 2}});
  }
  if (name == "sphere-round") {
    return std::make_shared<SphereModel>(name, 0.0, 1.0, Vec{0.0, 0.0, 1.0}, Census{{1, 0, 1}});
  }
  fail(errc::unknown_model, "unknown model '" + name + "'");
}

std::shared_ptr<const ManifoldModel> model_from_config(const io::TomlTable& table) {
  std::string name = table.get_string("name");
  long long seed = table.get_integer_or("seed", 0);
  long long maxima = table.get_integer_or("maxima", 3);
  return builtin_model(name, static_cast<unsigned long long>(seed), static_cast<int>(maxima));
}

namespace {

struct RawPoint {
  Vec coords;
  double value;
  int index;
  std::vector<Vec> frames;       // eigenvectors, unstable first
  std::vector<double> eigs;      // matching eigenvalues
};

// Hessian entries in a fixed tangent basis by central differences of the
// analytic gradient.
void hessian_2x2(const ManifoldModel& m, const Vec& x, const std::vector<Vec>& basis,
                 double h, double out[2][2]) {
  for (int j = 0; j < 2; ++j) {
    Vec xp = m.wrap(m.step(x, vscale(h, basis[j])));
    Vec xm = m.wrap(m.step(x, vscale(-h, basis[j])));
    Vec gp = m.grad(xp), gm = m.grad(xm);
    for (int i = 0; i < 2; ++i) out[i][j] = (vdot(gp, basis[i]) - vdot(gm, basis[i])) / (2 * h);
  }
  double sym = 0.5 * (out[0][1] + out[1][0]);
  out[0][1] = out[1][0] = sym;
}

double second_derivative_1d(const ManifoldModel& m, const Vec& x, double h) {
  Vec xp = m.step(x, {0.0, h, 0.0}), xm = m.step(x, {0.0, -h, 0.0});
  return (m.grad(xp)[1] - m.grad(xm)[1]) / (2 * h);
}

void eig_sym_2x2(const double h[2][2], double eval[2], double evec[2][2]) {
  double tr = h[0][0] + h[1][1];
  double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
  double disc = std::sqrt(std::max(tr * tr / 4 - det, 0.0));
  eval[0] = tr / 2 - disc;
  eval[1] = tr / 2 + disc;
  for (int k = 0; k < 2; ++k) {
    // Each matrix row gives a candidate null vector of (H - eval); keep the
    // better-conditioned one so finite-difference noise cannot pick a
    // spurious direction when the matrix is nearly diagonal.
    double r1x = -h[0][1], r1y = h[0][0] - eval[k];
    double r2x = h[1][1] - eval[k], r2y = -h[1][0];
    double n1 = std::hypot(r1x, r1y), n2 = std::hypot(r2x, r2y);
    double vx, vy;
    if (std::max(n1, n2) < 1e-12) {
      vx = (k == 0) ? 1 : 0;
      vy = (k == 0) ? 0 : 1;
    } else if (n1 >= n2) {
      vx = r1x / n1; vy = r1y / n1;
    } else {
      vx = r2x / n2; vy = r2y / n2;
    }
    evec[k][0] = vx;
    evec[k][1] = vy;
  }
}

// Deterministic sign convention for eigenvectors: largest-magnitude ambient
// component made positive.
Vec canonical_sign(const Vec& v) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::fabs(v[i]) > std::fabs(v[best])) best = i;
  return (v[best] < 0) ? vscale(-1.0, v) : v;
}

std::vector<RawPoint> locate_raw(const ManifoldModel& m, double tol) {
  std::vector<RawPoint> found;
  auto try_accept = [&](Vec x) {
    x = m.wrap(x);
    Vec g = m.grad(x);
    if (vnorm(g) > tol) return;
    for (const auto& p : found)
      if (m.dist(p.coords, x) < 1e-6) return;
    RawPoint rp;
    rp.coords = x;
    rp.value = m.f(x);
    if (m.dimension() == 1) {
      double fpp = second_derivative_1d(m, x, 1e-7);
      require(std::fabs(fpp) >= 1e-8, errc::degenerate_critical_point,
              "vanishing second derivative at a critical point");
      rp.index = fpp < 0 ? 1 : 0;
      rp.frames = {Vec{0.0, 1.0, 0.0}};
      rp.eigs = {fpp};
    } else {
      std::vector<Vec> basis = m.tangent_basis(x);
      double H[2][2];
      hessian_2x2(m, x, basis, 1e-5, H);
      double eval[2], evec[2][2];
      eig_sym_2x2(H, eval, evec);
      require(std::fabs(eval[0]) >= 1e-8 && std::fabs(eval[1]) >= 1e-8,
              errc::degenerate_critical_point, "degenerate Hessian at a critical point");
      rp.index = (eval[0] < 0) + (eval[1] < 0);
      for (int k = 0; k < 2; ++k) {
        Vec v = vadd(vscale(evec[k][0], basis[0]), vscale(evec[k][1], basis[1]));
        rp.frames.push_back(canonical_sign(vnormalize(v)));
        rp.eigs.push_back(eval[k]);
      }
      // eigenvalues ascend, so any unstable directions come first already
    }
    found.push_back(std::move(rp));
  };

  if (m.dimension() == 1) {
    for (int c = 0; c < m.components(); ++c) {
      double L = m.component_length(c);
      const int seeds = 256;
      for (int i = 0; i < seeds; ++i) {
        double s = L * (i + 0.5) / seeds;
        Vec x = {static_cast<double>(c), s, 0.0};
        for (int it = 0; it < 80; ++it) {
          double g = m.grad(x)[1];
          if (std::fabs(g) <= tol) break;
          double fpp = second_derivative_1d(m, x, 1e-7);
          if (std::fabs(fpp) < 1e-10) break;
          double d = -g / fpp;
          d = std::clamp(d, -0.2 * L, 0.2 * L);
          x = m.wrap(m.step(x, {0.0, d, 0.0}));
        }
        try_accept(x);
      }
    }
  } else {
    std::vector<Vec> seeds;
    if (m.kind() == "flat-torus") {
      const int g = 256;
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
          seeds.push_back({(i + 0.5) / g, (j + 0.5) / g, 0.0});
    } else {
      const int count = 65536;
      const double golden = M_PI * (3.0 - std::sqrt(5.0));
      for (int i = 0; i < count; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / count;
        double r = std::sqrt(std::max(1.0 - z * z, 0.0));
        double phi = golden * i;
        seeds.push_back({r * std::cos(phi), r * std::sin(phi), z});
      }
    }
    for (const Vec& seed : seeds) {
      Vec x = m.wrap(seed);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        Vec g = m.grad(x);
        if (vnorm(g) <= tol) { ok = true; break; }
        std::vector<Vec> basis = m.tangent_basis(x);
        double H[2][2];
        hessian_2x2(m, x, basis, 1e-5, H);
        double det = H[0][0] * H[1][1] - H[0][1] * H[1][0];
        if (std::fabs(det) < 1e-12) break;
        double g1 = vdot(g, basis[0]), g2 = vdot(g, basis[1]);
        double v1 = -(H[1][1] * g1 - H[0][1] * g2) / det;
        double v2 = -(-H[1][0] * g1 + H[0][0] * g2) / det;
        double n = std::hypot(v1, v2);
        if (n > 0.08) { v1 *= 0.08 / n; v2 *= 0.08 / n; }
        x = m.wrap(m.step(x, vadd(vscale(v1, basis[0]), vscale(v2, basis[1]))));
      }
      if (ok) try_accept(x);
    }
  }
  return found;
}

double trivialization_radius(const ManifoldModel& m, const RawPoint& p, double nearest) {
  // Radius (in eigen-scaled chart units) on which the quadratic normal form
  // holds to 1e-4 |x|^2 plus a rounding allowance, with the chart ball kept
  // well inside the distance to the nearest other critical point.
  double min_abs = 1e18;
  for (double e : p.eigs) min_abs = std::min(min_abs, std::fabs(e));
  double chart_per_unit = std::sqrt(min_abs / 2.0);  // ambient -> chart lower bound
  double rmax = 0.40 * nearest * chart_per_unit;
  double noise = 16.0 * std::numeric_limits<double>::epsilon() * (std::fabs(p.value) + 1.0);
  int dirs = (m.dimension() == 1) ? 2 : 16;
  for (double r = std::max(rmax, 2e-9); r >= 1e-9; r *= 0.8) {
    bool ok = true;
    for (int i = 0; i < dirs && ok; ++i) {
      double phi = 2.0 * M_PI * (i + 0.37) / dirs;
      std::vector<double> xi;
      if (m.dimension() == 1) xi = {(i == 0) ? 1.0 : -1.0};
      else xi = {std::cos(phi), std::sin(phi)};
      for (double rr : {r, 0.5 * r}) {
        Vec off = {0.0, 0.0, 0.0};
        double quad = 0.0;
        for (size_t k = 0; k < p.eigs.size(); ++k) {
          double xk = rr * xi[k];
          off = vadd(off, vscale(xk / std::sqrt(std::fabs(p.eigs[k]) / 2.0), p.frames[k]));
          quad += (p.eigs[k] < 0 ? -1.0 : 1.0) * xk * xk;
        }
        double fv = m.f(m.wrap(m.step(p.coords, off)));
        if (std::fabs(fv - p.value - quad) > 1e-4 * rr * rr + noise) ok = false;
      }
    }
    if (ok) return r;
  }
  fail(errc::degenerate_critical_point, "no trivialization radius found");
}

}  // namespace

std::vector<CriticalPoint> locate_critical_points(const ManifoldModel& m, double tol) {
  std::vector<RawPoint> raw = locate_raw(m, tol);

  std::vector<int> counts(m.dimension() + 1, 0);
  for (const auto& p : raw) counts[p.index]++;
  if (counts != m.census().by_index) {
    std::ostringstream os;
    os << "critical point census mismatch for " << m.name() << ": found";
    for (int c : counts) os << " " << c;
    os << ", expected";
    for (int c : m.census().by_index) os << " " << c;
    fail(errc::census_mismatch, os.str());
  }
  int chi = 0;
  for (size_t k = 0; k < counts.size(); ++k) chi += (k % 2 ? -1 : 1) * counts[k];
  require(chi == m.euler_characteristic() * (m.dimension() == 2 ? 1 : 1), errc::census_mismatch,
          "Euler characteristic mismatch");

  for (size_t i = 0; i < raw.size(); ++i)
    for (size_t j = i + 1; j < raw.size(); ++j)
      require(std::fabs(raw[i].value - raw[j].value) > 1e-9, errc::census_mismatch,
              "critical values are not pairwise distinct");

  // Stable ids: maxima by descending value, minima ascending, saddles
  // descending; single saddle/minimum on surfaces keeps the short name.
  std::vector<CriticalPoint> out;
  int n = m.dimension();
  std::vector<const RawPoint*> by_index[3];
  for (const auto& p : raw) by_index[p.index].push_back(&p);
  std::sort(by_index[n].begin(), by_index[n].end(),
            [](const RawPoint* a, const RawPoint* b) { return a->value > b->value; });
  std::sort(by_index[0].begin(), by_index[0].end(),
            [](const RawPoint* a, const RawPoint* b) { return a->value < b->value; });
  if (n == 2)
    std::sort(by_index[1].begin(), by_index[1].end(),
              [](const RawPoint* a, const RawPoint* b) { return a->value > b->value; });

  auto nearest_gap = [&](const RawPoint& p) {
    double gap = m.diameter();
    for (const auto& q : raw) {
      double d = m.dist(p.coords, q.coords);
      if (d > 1e-12) gap = std::min(gap, d);
    }
    return gap;
  };

  auto emit = [&](const RawPoint& p, std::string id) {
    CriticalPoint cp;
    cp.id = std::move(id);
    cp.coords = p.coords;
    cp.index = p.index;
    cp.value = p.value;
    for (size_t k = 0; k < p.frames.size(); ++k) {
      if (p.eigs[k] < 0) { cp.unstable_frame.push_back(p.frames[k]); }
      else { cp.stable_frame.push_back(p.frames[k]); }
    }
    std::vector<double> eigs_sorted;
    for (double e : p.eigs) if (e < 0) eigs_sorted.push_back(e);
    for (double e : p.eigs) if (e >= 0) eigs_sorted.push_back(e);
    cp.hessian_eigs = eigs_sorted;
    // Saddles: flip the stable eigenvector if needed so the (stable,
    // unstable) pair is positively oriented in the tangent plane.
    if (n == 2 && cp.index == 1) {
      std::vector<Vec> basis = m.tangent_basis(cp.coords);
      const Vec& su = cp.unstable_frame[0];
      Vec& ss = cp.stable_frame[0];
      double det = vdot(ss, basis[0]) * vdot(su, basis[1]) -
                   vdot(ss, basis[1]) * vdot(su, basis[0]);
      if (det < 0) ss = vscale(-1.0, ss);
    }
    double gap = nearest_gap(p);
    cp.trivialization_radius = trivialization_radius(m, p, gap);
    cp.detection_radius = 0.25 * gap;
    out.push_back(std::move(cp));
  };

  auto name_series = [&](const std::vector<const RawPoint*>& pts, int index) {
    for (size_t i = 0; i < pts.size(); ++i) {
      std::string id;
      if (index == n) {
        if (n == 1) id = "M" + std::to_string(i + 1);
        else id = std::string(1, static_cast<char>('A' + i));
      } else if (index == 0) {
        id = (pts.size() == 1 && n == 2) ? "m" : "m" + std::to_string(i + 1);
      } else {
        id = (pts.size() == 1) ? "s" : "s" + std::to_string(i + 1);
      }
      emit(*pts[i], id);
    }
  };
  name_series(by_index[n], n);
  if (n == 2) name_series(by_index[1], 1);
  name_series(by_index[0], 0);
  return out;
}

std::string census_csv(const std::vector<CriticalPoint>& crits) {
  std::ostringstream os;
  os << "id,index,value,x0,x1,x2\n";
  char buf[256];
  for (const auto& c : crits) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.17g\n", c.id.c_str(), c.index,
                  c.value, c.coords[0], c.coords[1], c.coords[2]);
    os << buf;
  }
  return os.str();
}

double gradient_consistency(const ManifoldModel& m, int samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec x;
    if (m.kind() == "circle-union") {
      int c = static_cast<int>(u01(rng) * m.components());
      c = std::min(c, m.components() - 1);
      x = {static_cast<double>(c), u01(rng) * m.component_length(c), 0.0};
    } else if (m.kind() == "flat-torus") {
      x = {u01(rng), u01(rng), 0.0};
    } else {
      double z = 2 * u01(rng) - 1, phi = 2 * M_PI * u01(rng);
      double r = std::sqrt(std::max(1.0 - z * z, 0.0));
      x = {r * std::cos(phi), r * std::sin(phi), z};
    }
    x = m.wrap(x);
    Vec g = m.grad(x);
    double h = 1e-6;
    double scale = std::max(1.0, vnorm(g));
    for (const Vec& b : m.tangent_basis(x)) {
      double fd = (m.f(m.wrap(m.step(x, vscale(h, b)))) - m.f(m.wrap(m.step(x, vscale(-h, b))))) /
                  (2 * h);
      worst = std::max(worst, std::fabs(fd - vdot(g, b)) / scale);
    }
  }
  return worst;
}

}  // namespace morselink::geom
