#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/toml_lite.hpp"

namespace morselink::geom {

// Model coordinates are a fixed triple whose meaning depends on the kind:
//   circle-union:    (component index, arclength s, 0) with s taken mod the
//                    component circumference; trajectories keep s unwrapped.
//   flat-torus:      (x, y, 0) on the unit square, universal cover allowed.
//   embedded-sphere: ambient (x, y, z) on the unit sphere.
using Vec = std::array<double, 3>;

Vec vadd(const Vec& a, const Vec& b);
Vec vsub(const Vec& a, const Vec& b);
Vec vscale(double s, const Vec& a);
double vdot(const Vec& a, const Vec& b);
double vnorm(const Vec& a);
Vec vcross(const Vec& a, const Vec& b);
Vec vnormalize(const Vec& a);

struct CriticalPoint {
  std::string id;
  Vec coords{};            // canonical (wrapped) coordinates
  int index = 0;
  double value = 0.0;
  // Orthonormal eigenframes of the Hessian in the oriented tangent basis at
  // the point. For surfaces the vectors live in the ambient/chart tangent
  // plane; for circles they are +/- the arclength direction.
  std::vector<Vec> unstable_frame;
  std::vector<Vec> stable_frame;
  std::vector<double> hessian_eigs;  // matching unstable then stable order
  // Radius (in eigenframe chart units) on which the quadratic normal form is
  // certified to 1e-4 |x|^2 plus a rounding allowance.
  double trivialization_radius = 0.0;
  // Larger standoff used by the flow machinery for event/stopping balls:
  // a fixed fraction of the distance to the nearest other critical point.
  double detection_radius = 0.0;
};

// Census of expected critical points by index, declared by each builtin model
// and enforced by the locator.
struct Census {
  std::vector<int> by_index;  // size n+1
  int total() const;
};

class ManifoldModel {
 public:
  virtual ~ManifoldModel() = default;

  const std::string& name() const { return name_; }
  const std::string& kind() const { return kind_; }
  int dimension() const { return dim_; }
  int euler_characteristic() const { return euler_; }
  const Census& census() const { return census_; }
  double diameter() const { return diameter_; }

  virtual double f(const Vec& x) const = 0;
  // Riemannian gradient expressed in the same coordinates as x (for circles
  // the s-slot carries f'; for the sphere the vector is tangent ambient).
  virtual Vec grad(const Vec& x) const = 0;

  // Canonical representative of x on the manifold (wraps/normalizes).
  virtual Vec wrap(const Vec& x) const = 0;
  // Retraction of x + v back onto the manifold, without wrapping (so
  // trajectories can live in the universal cover).
  virtual Vec step(const Vec& x, const Vec& v) const = 0;
  // Distance between canonical representatives.
  virtual double dist(const Vec& a, const Vec& b) const = 0;
  // Small displacement from `from` to a nearby `to`, expressed in the same
  // coordinates as tangent vectors at `from` (wrap-aware on flat models,
  // ambient chord on the sphere).
  virtual Vec displacement(const Vec& from, const Vec& to) const = 0;

  // Oriented orthonormal tangent basis at x (one vector for circles, a
  // positively oriented pair for surfaces).
  virtual std::vector<Vec> tangent_basis(const Vec& x) const = 0;

  // Number of circle components (1 unless circle-union).
  virtual int components() const { return 1; }
  virtual double component_length(int) const { return 0.0; }

 protected:
  ManifoldModel(std::string name, std::string kind, int dim, int euler, Census census,
                double diameter)
      : name_(std::move(name)),
        kind_(std::move(kind)),
        dim_(dim),
        euler_(euler),
        census_(std::move(census)),
        diameter_(diameter) {}

 private:
  std::string name_;
  std::string kind_;
  int dim_;
  int euler_;
  Census census_;
  double diameter_;
};

// Builtins: "circle-a", "circle-random" (params: seed, maxima count),
// "torus-c", "sphere-b", "sphere-round". UNKNOWN_MODEL otherwise.
std::shared_ptr<const ManifoldModel> builtin_model(const std::string& name,
                                                   unsigned long long seed = 0, int maxima = 3);

// Model selection from a TOML table ([model] name=..., seed=..., maxima=...).
std::shared_ptr<const ManifoldModel> model_from_config(const io::TomlTable& table);

// Dense seeding + Newton; validates nondegeneracy, census, the declared
// critical values where the model pins them, and gradient/value consistency.
// Returns points sorted by (index desc, value desc, id) with ids assigned:
// maxima M1/M2/... or A/B..., saddles s1..., minima m1... by value order.
std::vector<CriticalPoint> locate_critical_points(const ManifoldModel& model, double tol = 1e-12);

// CSV census export: id,index,value,coords...
std::string census_csv(const std::vector<CriticalPoint>& crits);

// Finite-difference consistency of grad against f at `samples` seeded points;
// returns the max relative error (test hook for the model invariants).
double gradient_consistency(const ManifoldModel& model, int samples, unsigned long long seed);

}  // namespace morselink::geom
