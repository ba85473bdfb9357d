#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geom/model.hpp"

namespace morselink::pl {

using geom::ManifoldModel;
using geom::Vec;

// An oriented affine cell (point, segment, triangle) with an integer
// multiplicity. Vertices live in model coordinates; on wrapped models a cell
// is cover-consistent: the vertices sit in one chart around the first vertex.
struct PLCell {
  std::vector<Vec> verts;
  long long mult = 1;

  int dim() const { return static_cast<int>(verts.size()) - 1; }
};

// A PL chain of uniform dimension with integer coefficients.
struct PLChain {
  int dim = 0;
  std::vector<PLCell> cells;

  bool is_zero() const { return cells.empty(); }
};

// Canonical form: every cell translated so its first vertex is wrapped,
// orientation normalized (multiplicity signs absorb flips), equal cells
// merged, zero multiplicities and degenerate (repeated-vertex) cells dropped.
// Identical constructions cancel bitwise.
PLChain canonical(const ManifoldModel& model, const PLChain& chain);

PLChain chain_add(const ManifoldModel& model, const PLChain& a, const PLChain& b);
PLChain chain_scale(long long s, const PLChain& a);

// Boundary: segments to endpoint 0-chains, triangles to edge 1-chains, in
// canonical form; 0-chains have empty boundary.
PLChain boundary(const ManifoldModel& model, const PLChain& chain);

// Sum of multiplicities (the count of a 0-chain).
long long total_multiplicity(const PLChain& chain);

// Range of f over all cell vertices; (inf, -inf) for the empty chain.
std::pair<double, double> f_range(const ManifoldModel& model, const PLChain& chain);

// Distance from a point to the carrier (minimum over cells).
double carrier_distance(const ManifoldModel& model, const PLChain& chain, const Vec& x);

// Signed multiplicity of a top-dimensional chain at a generic point: circle
// chains count oriented covers of the point by segments, surface chains count
// oriented triangles containing it. The point must be interior to the cells
// it meets (no tolerance handling here).
long long winding_multiplicity(const ManifoldModel& model, const PLChain& chain, const Vec& x);

// Transverse crossing of two short oriented segments on a surface model.
// Returns parameters along both segments, the crossing point (in the chart of
// segment a), and the orientation sign det[da, db] against the surface
// orientation; nullopt when the segments do not cross. near_parallel /
// near_endpoint flag borderline configurations for the caller's tolerance
// policy instead of silently resolving them.
struct SegmentCrossing {
  double t = 0.0;  // parameter along a
  double u = 0.0;  // parameter along b
  int sign = 0;
  Vec point{};
  bool near_parallel = false;
  bool near_endpoint = false;
};
std::optional<SegmentCrossing> segment_crossing(const ManifoldModel& model, const Vec& a0,
                                                const Vec& a1, const Vec& b0, const Vec& b1,
                                                double endpoint_tol);

// JSON round trip: {"dim": d, "cells": [{"vertices": [[x,y,z],...],
// "multiplicity": m}, ...]}.
std::string to_json(const PLChain& chain);
PLChain from_json(const std::string& text);

}  // namespace morselink::pl
