#pragma once

#include <stdexcept>
#include <string>

namespace morselink {

enum class errc {
  invalid_argument,
  parse_error,
  io_error,
  unknown_model,
  d_squared_nonzero,
  filtration_violation,
  not_a_field,
  degree_mismatch,
  not_a_boundary,
  unsolvable_over_ring,
  degenerate_critical_point,
  census_mismatch,
  step_limit_exceeded,
  left_domain,
  nontransverse_connection,
  bisection_failed,
  dualm_violation,
  chain_too_close_to_critical,
  nontransverse_crossing,
  simultaneous_crossing,
  degenerate_cell,
  nontransverse_after_jitter,
  not_null_homologous,
  carriers_intersect,
  unpairable_delta,
  no_linked_pair_found,
  invalid_config,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "INVALID_ARGUMENT";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::io_error: return "IO_ERROR";
    case errc::unknown_model: return "UNKNOWN_MODEL";
    case errc::d_squared_nonzero: return "D_SQUARED_NONZERO";
    case errc::filtration_violation: return "FILTRATION_VIOLATION";
    case errc::not_a_field: return "NOT_A_FIELD";
    case errc::degree_mismatch: return "DEGREE_MISMATCH";
    case errc::not_a_boundary: return "NOT_A_BOUNDARY";
    case errc::unsolvable_over_ring: return "UNSOLVABLE_OVER_RING";
    case errc::degenerate_critical_point: return "DEGENERATE_CRITICAL_POINT";
    case errc::census_mismatch: return "CENSUS_MISMATCH";
    case errc::step_limit_exceeded: return "STEP_LIMIT_EXCEEDED";
    case errc::left_domain: return "LEFT_DOMAIN";
    case errc::nontransverse_connection: return "NONTRANSVERSE_CONNECTION";
    case errc::bisection_failed: return "BISECTION_FAILED";
    case errc::dualm_violation: return "DUALM_VIOLATION";
    case errc::chain_too_close_to_critical: return "CHAIN_TOO_CLOSE_TO_CRITICAL";
    case errc::nontransverse_crossing: return "NONTRANSVERSE_CROSSING";
    case errc::simultaneous_crossing: return "SIMULTANEOUS_CROSSING";
    case errc::degenerate_cell: return "DEGENERATE_CELL";
    case errc::nontransverse_after_jitter: return "NONTRANSVERSE_AFTER_JITTER";
    case errc::not_null_homologous: return "NOT_NULL_HOMOLOGOUS";
    case errc::carriers_intersect: return "CARRIERS_INTERSECT";
    case errc::unpairable_delta: return "UNPAIRABLE_DELTA";
    case errc::no_linked_pair_found: return "NO_LINKED_PAIR_FOUND";
    case errc::invalid_config: return "INVALID_CONFIG";
    case errc::internal: return "INTERNAL";
  }
  return "INTERNAL";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace morselink
