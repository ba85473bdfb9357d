#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "geom/model.hpp"

using namespace morselink;
using namespace morselink::geom;

namespace {

std::map<std::string, const CriticalPoint*> by_id(const std::vector<CriticalPoint>& crits) {
  std::map<std::string, const CriticalPoint*> m;
  for (const auto& c : crits) m[c.id] = &c;
  return m;
}

}  // namespace

TEST_CASE("unknown model name is rejected") {
  CHECK_THROWS_WITH_AS(builtin_model("klein-bottle"), doctest::Contains("unknown model"),
                       error);
}

TEST_CASE("four-point circle: census, ids, values, positions") {
  auto m = builtin_model("circle-a");
  CHECK(m->dimension() == 1);
  CHECK(m->kind() == "circle-union");
  CHECK(m->components() == 1);
  CHECK(m->component_length(0) == doctest::Approx(2 * M_PI));

  auto crits = locate_critical_points(*m);
  REQUIRE(crits.size() == 4);
  auto ids = by_id(crits);
  REQUIRE(ids.count("M1"));
  REQUIRE(ids.count("M2"));
  REQUIRE(ids.count("m1"));
  REQUIRE(ids.count("m2"));
  CHECK(ids["M1"]->value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(ids["M2"]->value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(ids["m1"]->value == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(ids["m2"]->value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ids["M1"]->index == 1);
  CHECK(ids["m1"]->index == 0);
  // ccw order M1, m1, M2, m2 at quarter-circle spacing
  CHECK(ids["M1"]->coords[1] == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(ids["m1"]->coords[1] == doctest::Approx(M_PI / 2).epsilon(1e-9));
  CHECK(ids["M2"]->coords[1] == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(ids["m2"]->coords[1] == doctest::Approx(3 * M_PI / 2).epsilon(1e-9));
  for (const auto& c : crits) {
    CHECK(c.trivialization_radius > 1e-8);
    CHECK(c.detection_radius == doctest::Approx(M_PI / 8));
    CHECK(vnorm(m->grad(c.coords)) < 1e-11);
  }
  // unit curvature at every critical point
  for (const auto& c : crits) CHECK(std::fabs(c.hessian_eigs[0]) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("circle values interpolate monotonically between extrema") {
  auto m = builtin_model("circle-a");
  // f decreases strictly along the arc from M1 (s=0) to m1 (s=pi/2)
  double prev = m->f({0.0, 1e-6, 0.0});
  for (int i = 1; i <= 50; ++i) {
    double s = 1e-6 + (M_PI / 2 - 2e-6) * i / 50.0;
    double v = m->f({0.0, s, 0.0});
    CHECK(v < prev);
    prev = v;
  }
  CHECK(m->f({0.0, 0.0, 0.0}) == doctest::Approx(4.0));
  CHECK(m->f({0.0, M_PI, 0.0}) == doctest::Approx(3.0));
  // wrap invariance
  CHECK(m->f({0.0, 1.0 + 2 * M_PI, 0.0}) == doctest::Approx(m->f({0.0, 1.0, 0.0})));
}

TEST_CASE("seeded random circles are deterministic and censused") {
  auto a = builtin_model("circle-random", 7, 3);
  auto b = builtin_model("circle-random", 7, 3);
  auto ca = locate_critical_points(*a);
  auto cb = locate_critical_points(*b);
  REQUIRE(ca.size() == 6);
  REQUIRE(cb.size() == 6);
  for (size_t i = 0; i < ca.size(); ++i) {
    CHECK(ca[i].id == cb[i].id);
    CHECK(ca[i].value == cb[i].value);
    CHECK(ca[i].coords[1] == cb[i].coords[1]);
  }
  auto c = builtin_model("circle-random", 8, 3);
  auto cc = locate_critical_points(*c);
  bool differs = false;
  for (size_t i = 0; i < ca.size(); ++i)
    if (cc[i].value != ca[i].value) differs = true;
  CHECK(differs);
  // maxima in [2,4] and minima in [0,1], alternating around the circle
  for (const auto& p : cc) {
    if (p.index == 1) { CHECK(p.value >= 2.0); CHECK(p.value <= 4.0); }
    else { CHECK(p.value >= 0.0); CHECK(p.value <= 1.0); }
  }
}

TEST_CASE("torus census has the doubled maximum and three saddles") {
  auto m = builtin_model("torus-c");
  CHECK(m->dimension() == 2);
  CHECK(m->euler_characteristic() == 0);
  auto crits = locate_critical_points(*m);
  REQUIRE(crits.size() == 6);
  auto ids = by_id(crits);
  REQUIRE(ids.count("A"));
  REQUIRE(ids.count("B"));
  REQUIRE(ids.count("s1"));
  REQUIRE(ids.count("s2"));
  REQUIRE(ids.count("s3"));
  REQUIRE(ids.count("m"));
  CHECK(ids["A"]->value == doctest::Approx(1.55).epsilon(1e-9));
  CHECK(ids["m"]->value == doctest::Approx(-1.55).epsilon(1e-9));
  CHECK(ids["A"]->index == 2);
  CHECK(ids["B"]->index == 2);
  CHECK(ids["s2"]->index == 1);
  CHECK(ids["m"]->index == 0);
  CHECK(ids["B"]->value > ids["s1"]->value);

  // saddle frames: unit eigenvectors, (stable, unstable) positively oriented
  for (const char* sid : {"s1", "s2", "s3"}) {
    const CriticalPoint& s = *ids[sid];
    REQUIRE(s.unstable_frame.size() == 1);
    REQUIRE(s.stable_frame.size() == 1);
    CHECK(vnorm(s.unstable_frame[0]) == doctest::Approx(1.0));
    CHECK(vnorm(s.stable_frame[0]) == doctest::Approx(1.0));
    CHECK(std::fabs(vdot(s.unstable_frame[0], s.stable_frame[0])) < 1e-7);
    auto basis = m->tangent_basis(s.coords);
    double det = vdot(s.stable_frame[0], basis[0]) * vdot(s.unstable_frame[0], basis[1]) -
                 vdot(s.stable_frame[0], basis[1]) * vdot(s.unstable_frame[0], basis[0]);
    CHECK(det > 0.99);
  }
}

TEST_CASE("two-maxima sphere lands its tuned levels") {
  auto m = builtin_model("sphere-b");
  auto crits = locate_critical_points(*m);
  REQUIRE(crits.size() == 4);
  auto ids = by_id(crits);
  CHECK(ids["A"]->value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ids["B"]->value == doctest::Approx(1.2).epsilon(1e-7));
  CHECK(ids["s"]->value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(ids["m"]->value == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(ids["A"]->index == 2);
  CHECK(ids["s"]->index == 1);
  // A at the north pole, m at the south pole
  CHECK(ids["A"]->coords[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ids["m"]->coords[2] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("round sphere has exactly two critical points") {
  auto m = builtin_model("sphere-round");
  auto crits = locate_critical_points(*m);
  REQUIRE(crits.size() == 2);
  CHECK(crits[0].id == "A");
  CHECK(crits[1].id == "m");
  CHECK(crits[0].value == doctest::Approx(2.0));
  CHECK(crits[1].value == doctest::Approx(0.0).scale(1));
}

TEST_CASE("analytic gradients match finite differences") {
  for (const char* name : {"circle-a", "torus-c", "sphere-b", "sphere-round"}) {
    auto m = builtin_model(name);
    CHECK(gradient_consistency(*m, 100, 20240815) < 1e-5);
  }
  auto r = builtin_model("circle-random", 3, 4);
  CHECK(gradient_consistency(*r, 100, 99) < 1e-5);
}

TEST_CASE("quadratic normal form holds on the trivialization ball") {
  for (const char* name : {"circle-a", "torus-c", "sphere-b"}) {
    auto m = builtin_model(name);
    auto crits = locate_critical_points(*m);
    for (const auto& c : crits) {
      REQUIRE(c.trivialization_radius > 0);
      double r = c.trivialization_radius;
      int dirs = (m->dimension() == 1) ? 2 : 12;
      for (int i = 0; i < dirs; ++i) {
        double phi = 2 * M_PI * (i + 0.21) / dirs;
        std::vector<double> xi =
            (m->dimension() == 1) ? std::vector<double>{i == 0 ? 1.0 : -1.0}
                                  : std::vector<double>{std::cos(phi), std::sin(phi)};
        Vec off = {0, 0, 0};
        double quad = 0;
        std::vector<Vec> frames = c.unstable_frame;
        frames.insert(frames.end(), c.stable_frame.begin(), c.stable_frame.end());
        for (size_t k = 0; k < frames.size(); ++k) {
          double xk = 0.9 * r * xi[k];
          off = vadd(off, vscale(xk / std::sqrt(std::fabs(c.hessian_eigs[k]) / 2.0), frames[k]));
          quad += (c.hessian_eigs[k] < 0 ? -1.0 : 1.0) * xk * xk;
        }
        double fv = m->f(m->wrap(m->step(c.coords, off)));
        double noise = 16.0 * std::numeric_limits<double>::epsilon() * (std::fabs(c.value) + 1.0);
        CHECK(std::fabs(fv - c.value - quad) <= 1.1e-4 * (0.9 * r) * (0.9 * r) + noise);
      }
    }
  }
}

TEST_CASE("census export is a plain csv table") {
  auto m = builtin_model("sphere-b");
  auto crits = locate_critical_points(*m);
  std::string csv = census_csv(crits);
  CHECK(csv.substr(0, 26) == "id,index,value,x0,x1,x2\nA,");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("config table selects models") {
  io::TomlDoc doc = io::parse_toml("name = \"circle-random\"\nseed = 12\nmaxima = 2\n");
  auto m = model_from_config(doc.root);
  CHECK(m->name() == "circle-random");
  CHECK(locate_critical_points(*m).size() == 4);
  io::TomlDoc bad = io::parse_toml("name = \"nope\"\n");
  CHECK_THROWS_AS(model_from_config(bad.root), error);
}
