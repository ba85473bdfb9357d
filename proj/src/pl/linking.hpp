#pragma once

#include <string>
#include <vector>

#include "pl/plchain.hpp"

namespace morselink::pl {

// Signed count of the transverse intersections of two chains of
// complementary dimension; the sign at each intersection compares the
// concatenated orientation frames (first argument first) with the model
// orientation. Borderline configurations are retried with a seeded
// translation of the first chain, then NONTRANSVERSE_AFTER_JITTER.
long long intersection_number(const ManifoldModel& model, const PLChain& a, const PLChain& b,
                              unsigned long long seed = 1);

// Resolution of the structured triangulation: arc subdivisions per cut for
// circles, grid size for the torus, subdivision depth for the sphere. Zero
// selects the default; refine() is the next finer scale with the same
// vertices embedded.
int default_mesh_scale(const ManifoldModel& model);
int refine_mesh_scale(const ManifoldModel& model, int mesh_scale);

// Solves dX = b over the integers on the structured mesh after snapping b
// onto it; the result is validated cell-by-cell against the snapped cycle.
// Throws NOT_NULL_HOMOLOGOUS when no integer solution exists.
PLChain bounding_chain(const ManifoldModel& model, const PLChain& b, int mesh_scale = 0);

// Linking number of two disjoint null-homologous cycles of complementary
// codimension-one dimensions: the intersection number of b_minus with a
// bounding chain of b_plus. With recheck_refined the value is recomputed on
// the next finer mesh and asserted equal. Throws NOT_NULL_HOMOLOGOUS or
// CARRIERS_INTERSECT.
long long linking_number(const ManifoldModel& model, const PLChain& b_minus,
                         const PLChain& b_plus, unsigned long long seed = 1, int mesh_scale = 0,
                         bool recheck_refined = false);

struct LinkRecord {
  int k = 0;
  long long lk = 0;
  int mesh_scale = 0;
  unsigned long long jitter_seed = 0;
};

// CSV rows: k,lk,mesh_scale,jitter_seed.
std::string linking_csv(const std::vector<LinkRecord>& rows);

}  // namespace morselink::pl
