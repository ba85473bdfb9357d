#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/sign_rules.hpp"
#include "geom/model.hpp"
#include "pl/linking.hpp"
#include "pl/plchain.hpp"

using namespace morselink;
using namespace morselink::pl;

namespace {

PLChain pts0(const std::vector<std::pair<double, long long>>& pts, int comp = 0) {
  PLChain g;
  g.dim = 0;
  for (const auto& [s, m] : pts) g.cells.push_back({{{double(comp), s, 0.0}}, m});
  return g;
}

PLChain spts(const std::vector<std::pair<Vec, long long>>& pts) {
  PLChain g;
  g.dim = 0;
  for (const auto& [x, m] : pts) g.cells.push_back({{x}, m});
  return g;
}

PLChain polygon(const std::vector<Vec>& verts, long long m = 1) {
  PLChain g;
  g.dim = 1;
  for (size_t i = 0; i < verts.size(); ++i)
    g.cells.push_back({{verts[i], verts[(i + 1) % verts.size()]}, m});
  return g;
}

PLChain open_path(const std::vector<Vec>& verts, long long m = 1) {
  PLChain g;
  g.dim = 1;
  for (size_t i = 0; i + 1 < verts.size(); ++i) g.cells.push_back({{verts[i], verts[i + 1]}, m});
  return g;
}

}  // namespace

TEST_CASE("intersection numbers on a flat chart pin the orientation convention") {
  auto torus = geom::builtin_model("torus-c");

  // Two coordinate-axis segments crossing once, standard orientations: +1.
  PLChain xseg = open_path({{0.375, 0.5, 0.0}, {0.625, 0.5, 0.0}});
  PLChain yseg = open_path({{0.5, 0.375, 0.0}, {0.5, 0.625, 0.0}});
  CHECK(intersection_number(*torus, xseg, yseg) == 1);
  CHECK(intersection_number(*torus, yseg, xseg) == -1);

  // Reversing either orientation flips the count.
  CHECK(intersection_number(*torus, chain_scale(-1, xseg), yseg) == -1);
  CHECK(intersection_number(*torus, xseg, chain_scale(-1, yseg)) == -1);

  // Disjoint carriers meet nothing.
  PLChain far = open_path({{0.0625, 0.0625, 0.0}, {0.0625, 0.25, 0.0}});
  CHECK(intersection_number(*torus, xseg, far) == 0);

  // Meridian against longitude: one crossing, sign per the convention.
  PLChain meridian = open_path({{0.21875, 0.375, 0.0}, {0.21875, 0.875, 0.0}, {0.21875, 1.375, 0.0}});
  PLChain longitude = open_path({{0.375, 0.4140625, 0.0}, {0.875, 0.4140625, 0.0}, {1.375, 0.4140625, 0.0}});
  CHECK(boundary(*torus, meridian).is_zero());
  CHECK(boundary(*torus, longitude).is_zero());
  CHECK(intersection_number(*torus, meridian, longitude) == -1);
  CHECK(intersection_number(*torus, longitude, meridian) == 1);

  // Points against a positively oriented triangle: winding times sign.
  PLChain disk;
  disk.dim = 2;
  disk.cells.push_back({{{0.25, 0.25, 0.0}, {0.75, 0.25, 0.0}, {0.5, 0.75, 0.0}}, 1});
  PLChain probes = spts({{{0.5, 0.375, 0.0}, 2}, {{0.1, 0.1, 0.0}, 5}});
  CHECK(intersection_number(*torus, probes, disk) == 2);
  CHECK(intersection_number(*torus, disk, probes) == 2);
}

TEST_CASE("jitter resolves a crossing that sits exactly on a joint") {
  auto torus = geom::builtin_model("torus-c");
  PLChain tent = open_path({{0.375, 0.25, 0.0}, {0.5, 0.5, 0.0}, {0.625, 0.25, 0.0}});
  // Runs through the tent's apex joint; whichever side the jitter lands on,
  // the segment crosses exactly one wing and both wings give the same sign.
  PLChain through = open_path({{0.5, 0.375, 0.0}, {0.5, 0.625, 0.0}});
  long long v = intersection_number(*torus, through, tent);
  CHECK(v == intersection_number(*torus, through, tent));  // deterministic retry
  CHECK(v == -1);
}

TEST_CASE("circle bounding chains and linking numbers") {
  auto circle = geom::builtin_model("circle-a");
  const double pi = 3.14159265358979323846;

  // b = (+p) - (+q): an arc from q to p.
  PLChain b = pts0({{0.3, 1}, {2.0, -1}});
  PLChain x = bounding_chain(*circle, b);
  CHECK(boundary(*circle, x).cells.size() == 2);
  CHECK(chain_add(*circle, boundary(*circle, x), chain_scale(-1, b)).is_zero());

  // Net multiplicity on a component has no primitive.
  CHECK_THROWS_WITH_AS(bounding_chain(*circle, pts0({{0.3, 1}, {2.0, 1}})),
                       doctest::Contains("nonzero total multiplicity"), error);

  // Interleaved pairs link once; nesting them on one arc unlinks them.
  PLChain b_plus = pts0({{pi / 2 + 0.11, 1}, {3 * pi / 2 - 0.13, -1}});
  PLChain b_minus = pts0({{0.07, 1}, {pi - 0.05, -1}});
  long long lk = linking_number(*circle, b_minus, b_plus, 1, 0, true);
  CHECK(lk == 1);
  long long lk_rev = linking_number(*circle, b_plus, b_minus, 1, 0, true);
  CHECK(lk_rev == sign_linksym(1, 0) * lk);

  PLChain nested = pts0({{pi / 2 + 0.31, 1}, {pi / 2 + 0.57, -1}});
  CHECK(linking_number(*circle, b_minus, nested) == 0);

  // Either cycle empty: zero. Touching carriers: rejected.
  CHECK(linking_number(*circle, PLChain{0, {}}, b_plus) == 0);
  CHECK_THROWS_AS(linking_number(*circle, pts0({{0.3, 1}, {2.0, -1}}), b), error);

  // Scaling a cycle scales the linking number.
  CHECK(linking_number(*circle, b_minus, chain_scale(3, b_plus)) == 3);
}

TEST_CASE("torus bounding chains: grid solve, meridian obstruction, refinement") {
  auto torus = geom::builtin_model("torus-c");

  // A dyadic square loop bounds; the filling's boundary is the same loop
  // decomposed into grid-pitch edges, bitwise.
  PLChain square = polygon({{0.25, 0.25, 0.0}, {0.625, 0.25, 0.0}, {0.625, 0.625, 0.0},
                            {0.25, 0.625, 0.0}});
  PLChain x = bounding_chain(*torus, square);
  CHECK(!x.is_zero());
  auto grid_rect = [](int g, int i0, int j0, int i1, int j1) {
    PLChain out;
    out.dim = 1;
    auto v = [g](int i, int j) { return Vec{double(i) / g, double(j) / g, 0.0}; };
    for (int i = i0; i < i1; ++i) out.cells.push_back({{v(i, j0), v(i + 1, j0)}, 1});
    for (int j = j0; j < j1; ++j) out.cells.push_back({{v(i1, j), v(i1, j + 1)}, 1});
    for (int i = i1; i > i0; --i) out.cells.push_back({{v(i, j1), v(i - 1, j1)}, 1});
    for (int j = j1; j > j0; --j) out.cells.push_back({{v(i0, j), v(i0, j - 1)}, 1});
    return out;
  };
  CHECK(chain_add(*torus, boundary(*torus, x), chain_scale(-1, grid_rect(128, 32, 32, 80, 80)))
            .is_zero());

  // The same region at the refined scale has the same area.
  PLChain x2 = bounding_chain(*torus, square, 256);
  double area1 = 0, area2 = 0;
  for (const auto& c : x.cells) area1 += double(c.mult) / (2.0 * 128 * 128);
  for (const auto& c : x2.cells) area2 += double(c.mult) / (2.0 * 256 * 256);
  CHECK(area1 == doctest::Approx(area2).epsilon(1e-12));

  // A meridian loop generates homology: no integer filling.
  PLChain meridian = open_path({{0.21875, 0.375, 0.0}, {0.21875, 0.875, 0.0}, {0.21875, 1.375, 0.0}});
  CHECK_THROWS_WITH_AS(bounding_chain(*torus, meridian),
                       doctest::Contains("nonzero homology class"), error);

  // An open path is not a cycle at all.
  CHECK_THROWS_AS(bounding_chain(*torus, open_path({{0.25, 0.25, 0.0}, {0.5, 0.25, 0.0}})), error);

  // Points inside versus outside the square loop link it once.
  PLChain pair = spts({{{0.4375, 0.4375, 0.0}, 1}, {{0.0625, 0.0625, 0.0}, -1}});
  long long lk = linking_number(*torus, pair, square, 1, 0, true);
  CHECK(std::llabs(lk) == 1);

  // The opposite dimension split: a null-homotopic loop around one point of
  // a point pair, with the loop as the minus cycle.
  long long lk_rev = linking_number(*torus, square, pair, 1, 0, true);
  CHECK(lk_rev == sign_linksym(2, 0) * lk);

  // Far-away point pairs are unlinked.
  PLChain off = spts({{{0.03125, 0.90625, 0.0}, 1}, {{0.09375, 0.90625, 0.0}, -1}});
  CHECK(linking_number(*torus, off, square) == 0);
}

TEST_CASE("sphere bounding chains: icosahedral solve and a linked point pair") {
  auto sphere = geom::builtin_model("sphere-b");

  // A 12-gon at a fixed latitude bounds a polar cap.
  std::vector<Vec> ring;
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < 12; ++i) {
    double a = 2 * pi * i / 12;
    ring.push_back({0.8 * std::cos(a), 0.8 * std::sin(a), 0.6});
  }
  PLChain loop = polygon(ring);
  PLChain x = bounding_chain(*sphere, loop);
  CHECK(!x.is_zero());
  // The filling closes up against the snapped loop exactly (checked inside);
  // its carrier stays on one side of the latitude up to one mesh cell.
  auto [lo, hi] = f_range(*sphere, x);
  CHECK(hi <= 2.0);

  PLChain pair = spts({{geom::vnormalize({0.05, -0.03, 1.0}), 1},
                       {geom::vnormalize({0.02, 0.07, -1.0}), -1}});
  long long lk = linking_number(*sphere, pair, loop, 1, 0, true);
  CHECK(std::llabs(lk) == 1);
  CHECK(linking_number(*sphere, loop, pair, 1, 0, true) == sign_linksym(2, 0) * lk);

  // Both points on one side: unlinked.
  PLChain same_side = spts({{geom::vnormalize({0.05, -0.03, 1.0}), 1},
                            {geom::vnormalize({-0.4, 0.1, 1.0}), -1}});
  CHECK(linking_number(*sphere, same_side, loop) == 0);
}

TEST_CASE("linking report rows serialize as plain csv") {
  std::string csv = linking_csv({{0, -1, 128, 7}, {1, 2, 5, 11}});
  CHECK(csv == "k,lk,mesh_scale,jitter_seed\n0,-1,128,7\n1,2,5,11\n");
}
