#include "geom/identities.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include <json.hpp>

#include "core/error.hpp"
#include "core/sign_rules.hpp"

namespace morselink::geom {

namespace {

long long to_ll(const alg::Scalar& s) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  require(denominator(s.v) == 1, errc::internal, "expected an integer coefficient");
  return numerator(s.v).convert_to<long long>();
}

Vec jitter_offset(const ManifoldModel& model, unsigned long long seed, int attempt) {
  std::mt19937_64 rng(seed * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL * attempt);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double scale = 1e-6 * model.diameter();
  if (model.kind() == "circle-union") return {0.0, scale * u(rng), 0.0};
  if (model.kind() == "flat-torus") return {scale * u(rng), scale * u(rng), 0.0};
  return {scale * u(rng), scale * u(rng), scale * u(rng)};
}

// Translating every vertex by the same offset keeps shared vertices bitwise
// shared, so boundary cancellations survive the jitter.
pl::PLChain translate_chain(const ManifoldModel& model, const pl::PLChain& g, const Vec& d) {
  pl::PLChain out = g;
  bool sphere = model.kind() == "embedded-sphere";
  for (auto& cell : out.cells)
    for (auto& v : cell.verts) v = sphere ? vnormalize(vadd(v, d)) : vadd(v, d);
  return out;
}

template <class Eval>
IdentityReport run_check(const MorseData& md, std::vector<pl::PLChain> chains,
                         const char* identity, const std::string& fixture,
                         unsigned long long seed, Eval eval) {
  const ManifoldModel& model = *md.sys.model;
  for (int attempt = 0;; ++attempt) {
    std::vector<pl::PLChain> cur = chains;
    if (attempt > 0) {
      // Each chain gets its own offset so that degeneracies between the
      // chains (not just against the flow) also resolve.
      for (size_t i = 0; i < cur.size(); ++i)
        cur[i] = translate_chain(model, cur[i], jitter_offset(model, seed, attempt * 8 + int(i)));
    }
    try {
      IdentityReport rep;
      rep.identity = identity;
      rep.fixture = fixture;
      rep.residual_max = eval(cur);
      rep.status = rep.residual_max == 0 ? "pass" : "fail";
      rep.jitter_attempts = attempt;
      return rep;
    } catch (const error& e) {
      bool retriable = e.code() == errc::nontransverse_crossing ||
                       e.code() == errc::simultaneous_crossing;
      if (!retriable || attempt >= 8) throw;
    }
  }
}

}  // namespace

std::string IdentityReport::to_json() const {
  nlohmann::json j;
  j["identity"] = identity;
  j["fixture"] = fixture;
  j["residual_max"] = residual_max;
  j["status"] = status;
  return j.dump(2);
}

IdentityReport check_cap_leibniz(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, int sign_of_f,
                                 unsigned long long seed) {
  const ManifoldModel& model = *md.sys.model;
  int n = model.dimension();
  return run_check(md, {g}, "igprop_ii", fixture, seed,
                   [&](const std::vector<pl::PLChain>& cs) {
                     const pl::PLChain& gg = cs[0];
                     CountMap cap_dg = cap_map(md, pl::boundary(model, gg), sign_of_f);
                     CountMap cap_g = cap_map(md, gg, sign_of_f);
                     CountMap d = boundary_count_map(md.complex(sign_of_f));
                     CountMap r = map_add(cap_dg, map_scale(-1, map_compose(d, cap_g)));
                     r = map_add(r, map_scale(pl::sign_cap_leibniz(n, gg.dim),
                                              map_compose(cap_g, d)));
                     return max_abs_entry(r);
                   });
}

IdentityReport check_fundid(const MorseData& md, const pl::PLChain& g0, const pl::PLChain& g1,
                            const std::string& fixture, int sign_of_f, unsigned long long seed) {
  const ManifoldModel& model = *md.sys.model;
  int n = model.dimension();
  return run_check(
      md, {g0, g1}, "fundid", fixture, seed, [&](const std::vector<pl::PLChain>& cs) {
        const pl::PLChain &a = cs[0], &b = cs[1];
        CountMap pair = two_point_map(md, a, b, sign_of_f);
        CountMap d = boundary_count_map(md.complex(sign_of_f));
        CountMap terms[6] = {
            two_point_map(md, pl::boundary(model, a), b, sign_of_f),
            two_point_map(md, a, pl::boundary(model, b), sign_of_f),
            map_compose(pair, d),
            map_compose(d, pair),
            map_compose(cap_map(md, b, sign_of_f), cap_map(md, a, sign_of_f)),
            cap_map(md, chain_product(model, a, b), sign_of_f),
        };
        CountMap r;
        for (int t = 0; t < 6; ++t)
          r = map_add(r, map_scale(pl::sign_fundid_term(t, n, a.dim, b.dim), terms[t]));
        return max_abs_entry(r);
      });
}

IdentityReport check_cap_adjoint(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, unsigned long long seed) {
  const ManifoldModel& model = *md.sys.model;
  int n = model.dimension();
  return run_check(md, {g}, "igprop_i", fixture, seed, [&](const std::vector<pl::PLChain>& cs) {
    const pl::PLChain& gg = cs[0];
    CountMap with_f = cap_map(md, gg, +1);
    CountMap reversed = cap_map(md, gg, -1);
    long long worst = 0;
    auto probe = [&](const std::string& q, const std::string& p) {
      int k = md.cx_f.generator(p).degree;
      long long lhs = reversed.entry(q, p);
      long long rhs = pl::sign_cap_adjoint(n, gg.dim, k) * with_f.entry(p, q);
      worst = std::max(worst, std::llabs(lhs - rhs));
    };
    for (const auto& [q, col] : reversed.cols)
      for (const auto& [p, v] : col) probe(q, p);
    for (const auto& [p, col] : with_f.cols)
      for (const auto& [q, v] : col) probe(q, p);
    return worst;
  });
}

IdentityReport check_point_count(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, unsigned long long seed) {
  return run_check(md, {g}, "piint", fixture, seed, [&](const std::vector<pl::PLChain>& cs) {
    const pl::PLChain& gg = cs[0];
    require(gg.is_zero() || gg.dim == 0, errc::invalid_argument,
            "the point-count identity needs a point chain");
    alg::Chain capped = apply_count_map(md.cx_f, cap_map(md, gg, +1), md.fundamental(+1));
    capped.degree = 0;
    long long rhs = to_ll(alg::pi_pairing(md.cx_f, md.fundamental(-1), capped));
    return std::llabs(pl::total_multiplicity(gg) - rhs);
  });
}

}  // namespace morselink::geom
