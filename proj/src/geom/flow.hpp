#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/complex.hpp"
#include "geom/integrate.hpp"
#include "geom/model.hpp"

namespace morselink::geom {

// One isolated flowline between critical points of adjacent effective index,
// with its signed contribution to the boundary coefficient m(from, to).
struct Connection {
  std::string from;
  std::string to;
  int sign = 0;
  double angle = 0.0;  // launch angle on the unstable sphere (0 or pi in 1d)
  Trajectory traj;     // descending polyline closed exactly at both endpoints
};

struct MorseSystem {
  std::shared_ptr<const ManifoldModel> model;
  std::vector<CriticalPoint> crits;

  const CriticalPoint& by_id(const std::string& id) const;
  FlowContext context(int sign) const;
};

MorseSystem make_system(std::shared_ptr<const ManifoldModel> model);

// Counts isolated descending flowlines between effective index 1 and 0
// (shooting forward along the unstable directions) and 2 and 1 (shooting the
// stable ends backward to their sources). Deterministic order (from, to,
// angle). Throws NONTRANSVERSE_CONNECTION.
std::vector<Connection> count_flowlines(const MorseSystem& sys, int sign);

// Chain complex over `ring` from a connection count (sign=+1: degrees are the
// indices and levels the values; sign=-1: degrees n-index, levels -value).
alg::FilteredComplex connection_complex(const MorseSystem& sys, const std::vector<Connection>& conns,
                                        int sign, const alg::Ring& ring);

struct MorseData {
  MorseSystem sys;
  std::vector<Connection> conns_f;
  std::vector<Connection> conns_neg;
  alg::FilteredComplex cx_f;    // over Z
  alg::FilteredComplex cx_neg;  // the -f complex, independently counted

  const alg::FilteredComplex& complex(int sign) const { return sign > 0 ? cx_f : cx_neg; }
  const std::vector<Connection>& connections(int sign) const {
    return sign > 0 ? conns_f : conns_neg;
  }
  // Sum of the top-degree generators (the fundamental cycle of the chosen
  // flow); closedness is validated at construction time.
  alg::Chain fundamental(int sign) const;
};

// Runs both flows, builds both complexes over Z, and validates: d d = 0, the
// fundamental cycles are closed, and the -f boundary agrees entrywise with
// the dual of the f boundary (DUALM_VIOLATION otherwise).
MorseData build_morse_data(std::shared_ptr<const ManifoldModel> model);

// CSV of a connection list: source,sink,sign,samples.
std::string connections_csv(const std::vector<Connection>& conns);

}  // namespace morselink::geom
