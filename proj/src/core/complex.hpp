#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ring.hpp"

namespace morselink::alg {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Generator {
  std::string id;
  int degree = 0;
  double level = 0.0;
};

// Sparse chain: generator id -> coefficient. The zero chain has an empty map
// and participates in any degree.
struct Chain {
  int degree = 0;
  std::map<std::string, Scalar> coeffs;

  bool is_zero() const { return coeffs.empty(); }
};

Chain chain_add(const Chain& a, const Chain& b, const Ring& ring);
Chain chain_scale(const Scalar& s, const Chain& a, const Ring& ring);
Chain chain_neg(const Chain& a, const Ring& ring);

// A finite chain complex with real filtration levels and exact coefficients.
class FilteredComplex {
 public:
  // Validates degrees, d∘d = 0 (exactly, over the ring) and strict filtration
  // (level of d(p) below level of p). Throws D_SQUARED_NONZERO or
  // FILTRATION_VIOLATION.
  static FilteredComplex make(int dimension, const Ring& ring, std::vector<Generator> generators,
                              std::map<std::string, Chain> boundary);

  int dimension() const { return dimension_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Generator>& generators() const { return generators_; }
  bool has_generator(const std::string& id) const { return index_.count(id) > 0; }
  const Generator& generator(const std::string& id) const;
  // Basis of a degree: ids in ascending order.
  const std::vector<std::string>& basis(int degree) const;
  int count(int degree) const { return static_cast<int>(basis(degree).size()); }

  const Chain& d(const std::string& id) const;
  Chain d(const Chain& c) const;

  // Highest generator level in the support; -inf for the zero chain.
  double level(const Chain& c) const;

  std::vector<Scalar> to_vec(const Chain& c) const;
  Chain from_vec(int degree, const std::vector<Scalar>& v) const;
  Chain single(const std::string& id) const;

  // Boundary matrix d_k : CM_k -> CM_{k-1} in the ascending-id bases.
  Mat boundary_matrix(int k) const;

  // Basis positions of degree k sorted by (level descending, id ascending).
  std::vector<int> level_order(int k) const;

  // Same generators over Q (embeds a Z complex for field-only searches).
  FilteredComplex over_rationals() const;

 private:
  FilteredComplex(int dimension, const Ring& ring) : dimension_(dimension), ring_(ring) {}

  int dimension_;
  Ring ring_;
  std::vector<Generator> generators_;          // sorted by (degree, id)
  std::map<std::string, size_t> index_;        // id -> position in generators_
  std::vector<std::vector<std::string>> by_degree_;
  std::map<std::string, Chain> boundary_;      // id -> d(id); absent means zero
  Chain zero_;
};

struct MorseDecomposition {
  std::vector<Int> counts;  // generator counts by degree
  std::vector<Int> betti;   // homology ranks by degree
  std::vector<Int> q;       // q_k = rank d_{k+1}; counts = betti + (1+t)*q
};

// Requires a field (NOT_A_FIELD over the integers).
MorseDecomposition morse_inequality_decomposition(const FilteredComplex& cx);

// Complex of the reversed function: degree k -> n-k, level v -> -v, boundary
// forced by the pairing adjunction (entrywise the usual transpose with a
// degree-dependent sign).
FilteredComplex dual_complex(const FilteredComplex& cx);

// <x, y> with x a chain of the dual complex in degree n-k and y in degree k:
// sum of products of matching coefficients. Throws DEGREE_MISMATCH.
Scalar pi_pairing(const FilteredComplex& cx, const Chain& x_dual, const Chain& y);

// Lambda(x, y) = <x, z> for any z with d z = y; defined for x in the image of
// the dual boundary and y in the image of d. Both memberships are certified by
// solving, and the two evaluation routes (via a primitive of y and via a
// primitive of x) are cross-checked. Throws NOT_A_BOUNDARY or, over Z when
// only rational primitives exist, UNSOLVABLE_OVER_RING.
Scalar lambda_pairing(const FilteredComplex& cx, const Chain& x_dual, const Chain& y);

// Solves d z = y in degree k+1; nullopt when y is not a boundary over the
// ring's fraction field; UNSOLVABLE_OVER_RING when only the lattice fails.
std::optional<Chain> boundary_primitive(const FilteredComplex& cx, const Chain& y);

// Boundary depth of degree k as the pairing supremum over level-echelonized
// images of d and of the dual boundary. Over Z the search runs over Q.
double beta_alg_sup(const FilteredComplex& cx, int k);

// Boundary depth of degree k from the definition: least beta >= 0 such that
// every boundary of level <= lambda admits a primitive of level <= lambda +
// beta, for all lambda. Field only.
double beta_alg_depth(const FilteredComplex& cx, int k);

}  // namespace morselink::alg
