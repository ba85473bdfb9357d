#pragma once

#include <optional>
#include <vector>

#include "ring.hpp"

namespace morselink::alg {

// Small dense matrix of exact scalars, row-major.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

Mat mat_mul(const Mat& x, const Mat& y, const Ring& ring);

// Rank by Gaussian elimination; requires a field.
int rank_field(Mat m, const Ring& ring);

// One solution of A x = b over a field, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_field(Mat a, std::vector<Scalar> b, const Ring& ring);

// One integer solution of A x = b, or nullopt when none exists. Exact
// column-Hermite reduction, so solvability over Z is decided correctly even
// when the rational solution set is nonempty but misses the lattice.
std::optional<std::vector<Int>> solve_integer(const std::vector<std::vector<Int>>& a,
                                              const std::vector<Int>& b);

// Reduces the rows of `vecs` to a fully reduced echelon basis over a field,
// scanning columns in the order given by `col_order` (pivots are chosen along
// that order; every pivot column is cleared in all other rows). Zero rows are
// dropped. Returns the pivot column of each surviving row.
std::vector<int> reduced_echelon(std::vector<std::vector<Scalar>>& vecs,
                                 const std::vector<int>& col_order, const Ring& ring);

// True when `target` lies in the row span of `basis` (field only).
bool in_span(const std::vector<std::vector<Scalar>>& basis, const std::vector<Scalar>& target,
             const Ring& ring);

}  // namespace morselink::alg
