#include "complex.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace morselink::alg {

Chain chain_add(const Chain& a, const Chain& b, const Ring& ring) {
  Chain out = a;
  if (out.is_zero()) out.degree = b.degree;
  for (const auto& [id, c] : b.coeffs) {
    auto it = out.coeffs.find(id);
    if (it == out.coeffs.end()) {
      if (!ring.is_zero(c)) out.coeffs.emplace(id, c);
      continue;
    }
    Scalar s = ring.add(it->second, c);
    if (ring.is_zero(s))
      out.coeffs.erase(it);
    else
      it->second = s;
  }
  return out;
}

Chain chain_scale(const Scalar& s, const Chain& a, const Ring& ring) {
  Chain out;
  out.degree = a.degree;
  if (ring.is_zero(s)) return out;
  for (const auto& [id, c] : a.coeffs) {
    Scalar v = ring.mul(s, c);
    if (!ring.is_zero(v)) out.coeffs.emplace(id, v);
  }
  return out;
}

Chain chain_neg(const Chain& a, const Ring& ring) { return chain_scale(ring.from_int(-1), a, ring); }

FilteredComplex FilteredComplex::make(int dimension, const Ring& ring,
                                      std::vector<Generator> generators,
                                      std::map<std::string, Chain> boundary) {
  require(dimension >= 0, errc::invalid_argument, "negative dimension");
  FilteredComplex cx(dimension, ring);

  std::sort(generators.begin(), generators.end(), [](const Generator& a, const Generator& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.id < b.id;
  });
  cx.by_degree_.resize(static_cast<size_t>(dimension) + 1);
  for (size_t i = 0; i < generators.size(); ++i) {
    const Generator& g = generators[i];
    require(!g.id.empty(), errc::invalid_argument, "empty generator id");
    require(g.degree >= 0 && g.degree <= dimension, errc::invalid_argument,
            "generator degree out of range: " + g.id);
    require(std::isfinite(g.level), errc::invalid_argument, "non-finite level: " + g.id);
    require(cx.index_.emplace(g.id, i).second, errc::invalid_argument,
            "duplicate generator id: " + g.id);
    cx.by_degree_[g.degree].push_back(g.id);
  }
  cx.generators_ = std::move(generators);

  for (auto& [id, ch] : boundary) {
    require(cx.index_.count(id), errc::invalid_argument, "boundary of unknown generator: " + id);
    const Generator& g = cx.generator(id);
    for (auto it = ch.coeffs.begin(); it != ch.coeffs.end();) {
      require(cx.index_.count(it->first), errc::invalid_argument,
              "boundary references unknown generator: " + it->first);
      require(cx.generator(it->first).degree == g.degree - 1, errc::invalid_argument,
              "boundary of " + id + " is not in degree " + std::to_string(g.degree - 1));
      if (ring.is_zero(it->second))
        it = ch.coeffs.erase(it);
      else
        ++it;
    }
    ch.degree = g.degree - 1;
    cx.boundary_.emplace(id, std::move(ch));
  }
  for (const Generator& g : cx.generators_) {
    auto [it, inserted] = cx.boundary_.try_emplace(g.id);
    if (inserted) it->second.degree = g.degree - 1;
  }

  for (const Generator& g : cx.generators_) {
    const Chain& dg = cx.d(g.id);
    double l = cx.level(dg);
    require(l < g.level, errc::filtration_violation,
            "level of d(" + g.id + ") does not drop below " + std::to_string(g.level));
    Chain dd = cx.d(dg);
    require(dd.is_zero(), errc::d_squared_nonzero, "d(d(" + g.id + ")) is nonzero");
  }
  return cx;
}

const Generator& FilteredComplex::generator(const std::string& id) const {
  auto it = index_.find(id);
  require(it != index_.end(), errc::invalid_argument, "unknown generator: " + id);
  return generators_[it->second];
}

const std::vector<std::string>& FilteredComplex::basis(int degree) const {
  static const std::vector<std::string> empty;
  if (degree < 0 || degree > dimension_) return empty;
  return by_degree_[degree];
}

const Chain& FilteredComplex::d(const std::string& id) const {
  auto it = boundary_.find(id);
  require(it != boundary_.end(), errc::invalid_argument, "unknown generator: " + id);
  return it->second;
}

Chain FilteredComplex::d(const Chain& c) const {
  Chain out;
  out.degree = c.degree - 1;
  for (const auto& [id, s] : c.coeffs) out = chain_add(out, chain_scale(s, d(id), ring_), ring_);
  out.degree = c.degree - 1;
  return out;
}

double FilteredComplex::level(const Chain& c) const {
  double l = kNegInf;
  for (const auto& [id, s] : c.coeffs) l = std::max(l, generator(id).level);
  return l;
}

std::vector<Scalar> FilteredComplex::to_vec(const Chain& c) const {
  const auto& ids = basis(c.degree);
  std::vector<Scalar> v(ids.size(), ring_.zero());
  for (const auto& [id, s] : c.coeffs) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    require(it != ids.end() && *it == id, errc::degree_mismatch,
            "chain entry " + id + " not in degree " + std::to_string(c.degree));
    v[static_cast<size_t>(it - ids.begin())] = s;
  }
  return v;
}

Chain FilteredComplex::from_vec(int degree, const std::vector<Scalar>& v) const {
  const auto& ids = basis(degree);
  require(v.size() == ids.size(), errc::degree_mismatch, "vector size mismatch");
  Chain c;
  c.degree = degree;
  for (size_t i = 0; i < v.size(); ++i)
    if (!ring_.is_zero(v[i])) c.coeffs.emplace(ids[i], v[i]);
  return c;
}

Chain FilteredComplex::single(const std::string& id) const {
  Chain c;
  c.degree = generator(id).degree;
  c.coeffs.emplace(id, ring_.one());
  return c;
}

Mat FilteredComplex::boundary_matrix(int k) const {
  const auto& cols = basis(k);
  const auto& rows = basis(k - 1);
  Mat m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j) {
    std::vector<Scalar> v = to_vec(d(cols[j]));
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = v[i];
  }
  return m;
}

std::vector<int> FilteredComplex::level_order(int k) const {
  const auto& ids = basis(k);
  std::vector<int> order(ids.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double la = generator(ids[a]).level, lb = generator(ids[b]).level;
    return la != lb ? la > lb : ids[a] < ids[b];
  });
  return order;
}

FilteredComplex FilteredComplex::over_rationals() const {
  require(ring_.kind() == ring_kind::integers, errc::invalid_argument,
          "rational embedding is for integer complexes");
  return FilteredComplex::make(dimension_, Ring::rationals(), generators_,
                               std::map<std::string, Chain>(boundary_.begin(), boundary_.end()));
}

MorseDecomposition morse_inequality_decomposition(const FilteredComplex& cx) {
  require(cx.ring().is_field(), errc::not_a_field, "morse decomposition needs a field");
  const int n = cx.dimension();
  MorseDecomposition out;
  out.counts.assign(n + 1, 0);
  out.betti.assign(n + 1, 0);
  out.q.assign(n + 1, 0);
  for (int k = 0; k <= n; ++k) out.counts[k] = cx.count(k);
  for (int k = 0; k < n; ++k) out.q[k] = rank_field(cx.boundary_matrix(k + 1), cx.ring());
  for (int k = 0; k <= n; ++k) {
    Int below = k > 0 ? out.q[k - 1] : Int(0);
    out.betti[k] = out.counts[k] - out.q[k] - below;
  }
  return out;
}

FilteredComplex dual_complex(const FilteredComplex& cx) {
  const int n = cx.dimension();
  std::vector<Generator> gens;
  for (const Generator& g : cx.generators())
    gens.push_back(Generator{g.id, n - g.degree, -g.level});

  // <d' h, g> = (-1)^(n-j) <h, d g> for g of degree j+1, so the column of h in
  // the dual boundary collects the row of h across boundaries of one degree up.
  std::map<std::string, Chain> boundary;
  const Ring& ring = cx.ring();
  for (const Generator& h : cx.generators()) {
    int j = h.degree;
    Chain col;
    Scalar sign = ring.from_int((n - j) % 2 == 0 ? 1 : -1);
    for (const std::string& g : cx.basis(j + 1)) {
      const Chain& dg = cx.d(g);
      auto it = dg.coeffs.find(h.id);
      if (it != dg.coeffs.end()) col.coeffs.emplace(g, ring.mul(sign, it->second));
    }
    if (!col.coeffs.empty()) boundary.emplace(h.id, std::move(col));
  }
  return FilteredComplex::make(n, ring, std::move(gens), std::move(boundary));
}

Scalar pi_pairing(const FilteredComplex& cx, const Chain& x_dual, const Chain& y) {
  require(x_dual.is_zero() || y.is_zero() || x_dual.degree + y.degree == cx.dimension(),
          errc::degree_mismatch, "pairing degrees must sum to the dimension");
  const Ring& ring = cx.ring();
  Scalar out = ring.zero();
  for (const auto& [id, a] : x_dual.coeffs) {
    auto it = y.coeffs.find(id);
    if (it != y.coeffs.end()) out = ring.add(out, ring.mul(a, it->second));
  }
  return out;
}

std::optional<Chain> boundary_primitive(const FilteredComplex& cx, const Chain& y) {
  const int k = y.degree;
  const Ring& ring = cx.ring();
  if (y.is_zero()) {
    Chain z;
    z.degree = k + 1;
    return z;
  }
  if (k + 1 > cx.dimension() || cx.count(k + 1) == 0) return std::nullopt;

  if (ring.kind() == ring_kind::integers) {
    Mat m = cx.boundary_matrix(k + 1);
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) a[i][j] = boost::multiprecision::numerator(m.at(i, j).v);
    std::vector<Scalar> yv = cx.to_vec(y);
    std::vector<Int> b(yv.size());
    for (size_t i = 0; i < yv.size(); ++i) b[i] = boost::multiprecision::numerator(yv[i].v);
    auto x = solve_integer(a, b);
    if (x) {
      std::vector<Scalar> xs(x->size());
      for (size_t i = 0; i < x->size(); ++i) xs[i] = Scalar(Rat((*x)[i]));
      return cx.from_vec(k + 1, xs);
    }
    FilteredComplex cq = cx.over_rationals();
    auto xq = solve_field(cq.boundary_matrix(k + 1), cq.to_vec(y), cq.ring());
    require(!xq.has_value(), errc::unsolvable_over_ring,
            "primitive exists over Q but not over Z");
    return std::nullopt;
  }

  auto x = solve_field(cx.boundary_matrix(k + 1), cx.to_vec(y), ring);
  if (!x) return std::nullopt;
  return cx.from_vec(k + 1, *x);
}

Scalar lambda_pairing(const FilteredComplex& cx, const Chain& x_dual, const Chain& y) {
  const int n = cx.dimension();
  require(x_dual.is_zero() || y.is_zero() || x_dual.degree + y.degree == n - 1,
          errc::degree_mismatch, "lambda degrees must sum to dimension - 1");

  auto z = boundary_primitive(cx, y);
  require(z.has_value(), errc::not_a_boundary, "second argument is not a boundary");
  Scalar lam = pi_pairing(cx, x_dual, *z);

  // Independent route through a primitive of x in the dual complex.
  FilteredComplex dual = dual_complex(cx);
  auto w = boundary_primitive(dual, x_dual);
  require(w.has_value(), errc::not_a_boundary, "first argument is not a dual boundary");
  int k = y.is_zero() ? (x_dual.is_zero() ? 0 : n - 1 - x_dual.degree) : y.degree;
  Scalar alt = pi_pairing(cx, *w, y);
  if ((n - k) % 2 != 0) alt = cx.ring().neg(alt);
  require(lam == alt, errc::internal, "lambda pairing routes disagree");
  return lam;
}

namespace {

// Rows of the image of d_(k+1), fully reduced along (level desc, id asc).
// Returns the vectors along with each row's pivot level.
struct EchelonImage {
  std::vector<std::vector<Scalar>> rows;
  std::vector<double> pivot_level;
};

EchelonImage echelon_image(const FilteredComplex& cx, int k) {
  EchelonImage out;
  if (k < 0 || k > cx.dimension()) return out;
  for (const std::string& g : cx.basis(k + 1)) {
    const Chain& dg = cx.d(g);
    if (!dg.is_zero()) out.rows.push_back(cx.to_vec(dg));
  }
  std::vector<int> pivots = reduced_echelon(out.rows, cx.level_order(k), cx.ring());
  const auto& ids = cx.basis(k);
  for (int p : pivots) out.pivot_level.push_back(cx.generator(ids[p]).level);
  return out;
}

}  // namespace

double beta_alg_sup(const FilteredComplex& cx, int k) {
  if (!cx.ring().is_field()) return beta_alg_sup(cx.over_rationals(), k);
  const int n = cx.dimension();
  FilteredComplex dual = dual_complex(cx);

  EchelonImage ys = echelon_image(cx, k);
  EchelonImage xs = echelon_image(dual, n - k - 1);
  if (ys.rows.empty() || xs.rows.empty()) return 0.0;

  // Lambda(x_i, y_j) = <x_i, z_j> for one primitive z_j per basis boundary.
  std::vector<Chain> primitives;
  for (const auto& row : ys.rows) {
    auto z = boundary_primitive(cx, cx.from_vec(k, row));
    require(z.has_value(), errc::internal, "echelon image row is not a boundary");
    primitives.push_back(*z);
  }

  double best = 0.0;
  for (size_t i = 0; i < xs.rows.size(); ++i) {
    Chain x = dual.from_vec(n - k - 1, xs.rows[i]);
    for (size_t j = 0; j < ys.rows.size(); ++j) {
      if (cx.ring().is_zero(pi_pairing(cx, x, primitives[j]))) continue;
      best = std::max(best, -xs.pivot_level[i] - ys.pivot_level[j]);
    }
  }
  return best;
}

double beta_alg_depth(const FilteredComplex& cx, int k) {
  require(cx.ring().is_field(), errc::not_a_field, "boundary depth sweep needs a field");

  EchelonImage image = echelon_image(cx, k);
  if (image.rows.empty()) return 0.0;

  std::set<double> lambdas(image.pivot_level.begin(), image.pivot_level.end());
  std::vector<std::pair<double, std::vector<Scalar>>> cols;  // (level of g, d g)
  for (const std::string& g : cx.basis(k + 1)) {
    const Chain& dg = cx.d(g);
    if (!dg.is_zero()) cols.emplace_back(cx.generator(g).level, cx.to_vec(dg));
  }
  std::sort(cols.begin(), cols.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double beta = 0.0;
  for (double lambda : lambdas) {
    std::vector<std::vector<Scalar>> v_lambda;
    for (size_t i = 0; i < image.rows.size(); ++i)
      if (image.pivot_level[i] <= lambda) v_lambda.push_back(image.rows[i]);
    if (v_lambda.empty()) continue;

    // Smallest level cut whose boundaries span V_lambda.
    std::vector<std::vector<Scalar>> span;
    size_t used = 0;
    double mu = kNegInf;
    bool contained = false;
    while (!contained) {
      require(used < cols.size(), errc::internal, "boundary cut never covers its own image");
      mu = cols[used].first;
      while (used < cols.size() && cols[used].first <= mu) span.push_back(cols[used++].second);
      contained = true;
      for (const auto& v : v_lambda)
        if (!in_span(span, v, cx.ring())) {
          contained = false;
          break;
        }
    }
    beta = std::max(beta, mu - lambda);
  }
  return beta;
}

}  // namespace morselink::alg
