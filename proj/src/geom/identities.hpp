#pragma once

#include <string>

#include "geom/caps.hpp"

namespace morselink::geom {

// One identity evaluated on one fixture. residual_max is the largest
// absolute entry of the residual matrix; status is "pass" exactly when it is
// zero. jitter_attempts records how many deterministic retries were spent
// before the evaluation went through.
struct IdentityReport {
  std::string identity;
  std::string fixture;
  long long residual_max = 0;
  std::string status;
  int jitter_attempts = 0;

  std::string to_json() const;
};

// Boundary rule of the cap operation: capping with the boundary of g equals
// the signed commutator of capping with g and the Morse boundary, asserted
// entrywise over the integers. On borderline crossings the input chain is
// translated by a deterministic seeded offset and the evaluation retried (at
// most 8 times) before the error propagates.
IdentityReport check_cap_leibniz(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, int sign_of_f = +1,
                                 unsigned long long seed = 1);

// Six-term boundary rule tying the two-point operation to the cap
// operations, the Morse boundary, and the fiber product of the two chains.
IdentityReport check_fundid(const MorseData& md, const pl::PLChain& g0, const pl::PLChain& g1,
                            const std::string& fixture, int sign_of_f = +1,
                            unsigned long long seed = 1);

// Adjunction between the cap operations of the two flows across the
// intersection pairing, asserted over all generator pairs.
IdentityReport check_cap_adjoint(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, unsigned long long seed = 1);

// Signed size of a point chain against the pairing of the reversed
// fundamental cycle with the capped fundamental cycle.
IdentityReport check_point_count(const MorseData& md, const pl::PLChain& g,
                                 const std::string& fixture, unsigned long long seed = 1);

}  // namespace morselink::geom
