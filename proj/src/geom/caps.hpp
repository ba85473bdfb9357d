#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/complex.hpp"
#include "geom/flow.hpp"
#include "pl/plchain.hpp"

namespace morselink::geom {

// Integer matrix on the Morse generators, stored by columns: cols[p][q] is
// the coefficient of q in the image of p. Degree bookkeeping rides on the
// generator degrees, so a degree pair with no stored entries is a zero block.
struct CountMap {
  std::map<std::string, std::map<std::string, long long>> cols;

  void add(const std::string& from, const std::string& to, long long c);
  long long entry(const std::string& from, const std::string& to) const;
  bool is_zero() const;
};

CountMap map_add(const CountMap& a, const CountMap& b);
CountMap map_scale(long long s, const CountMap& a);
// outer(inner(x)).
CountMap map_compose(const CountMap& outer, const CountMap& inner);
long long max_abs_entry(const CountMap& m);

// The boundary operator of an integer complex as a CountMap.
CountMap boundary_count_map(const alg::FilteredComplex& cx);

// Explicit block of the map between two degrees of cx: rows indexed by the
// ascending target basis, columns by the ascending source basis; the zero
// matrix when nothing lands there.
std::vector<std::vector<long long>> degree_block(const alg::FilteredComplex& cx, const CountMap& m,
                                                 int degree_from, int degree_to);

// Image of a chain of cx under the map (integer coefficients).
alg::Chain apply_count_map(const alg::FilteredComplex& cx, const CountMap& m, const alg::Chain& x);

// Cap operation of a PL chain g of dimension v on the Morse complex of the
// chosen flow: counts signed transverse incidences of the carrier of g with
// the connecting flowlines, lowering the degree by n - v. A point chain
// contributes through the flowline passing through it, a curve on a surface
// through its crossings with the isolated flowlines, a top-dimensional chain
// through its winding multiplicity at each critical point. Throws
// CHAIN_TOO_CLOSE_TO_CRITICAL when the carrier (for v < n) or the boundary
// (v = n) enters a trivialization ball, NONTRANSVERSE_CROSSING on borderline
// incidences; jitter-and-retry is the caller's job.
CountMap cap_map(const MorseData& md, const pl::PLChain& g, int sign_of_f);

// Two-point operation: counts ordered pairs of incidences on one flowline (a
// g0 hit strictly earlier than a g1 hit), lowering the degree by
// 2n - v0 - v1 - 1. Equal-time hits throw SIMULTANEOUS_CROSSING; other
// errors as cap_map.
CountMap two_point_map(const MorseData& md, const pl::PLChain& g0, const pl::PLChain& g1,
                       int sign_of_f = +1);

// Transverse fiber product of two PL chains: the part of the manifold where
// both carriers sit, of dimension v0 + v1 - n, weighted by both
// multiplicities (empty when the expected dimension is negative). Only the
// combinations the identity checks consume are supported; a product that
// would require subdividing a top-dimensional factor on a surface throws
// INVALID_ARGUMENT.
pl::PLChain chain_product(const ManifoldModel& model, const pl::PLChain& g0,
                          const pl::PLChain& g1);

}  // namespace morselink::geom
