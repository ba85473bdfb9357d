#include "linalg.hpp"

#include <numeric>

namespace morselink::alg {

Mat mat_mul(const Mat& x, const Mat& y, const Ring& ring) {
  require(x.cols == y.rows, errc::degree_mismatch, "matrix size mismatch");
  Mat out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (ring.is_zero(x.at(i, k))) continue;
      for (int j = 0; j < y.cols; ++j)
        out.at(i, j) = ring.add(out.at(i, j), ring.mul(x.at(i, k), y.at(k, j)));
    }
  return out;
}

int rank_field(Mat m, const Ring& ring) {
  require(ring.is_field(), errc::not_a_field, "rank needs a field");
  int r = 0;
  for (int j = 0; j < m.cols && r < m.rows; ++j) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (!ring.is_zero(m.at(i, j))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j2 = 0; j2 < m.cols; ++j2) std::swap(m.at(pivot, j2), m.at(r, j2));
    Scalar lead = ring.inv(m.at(r, j));
    for (int j2 = j; j2 < m.cols; ++j2) m.at(r, j2) = ring.mul(m.at(r, j2), lead);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || ring.is_zero(m.at(i, j))) continue;
      Scalar f = m.at(i, j);
      for (int j2 = j; j2 < m.cols; ++j2)
        m.at(i, j2) = ring.sub(m.at(i, j2), ring.mul(f, m.at(r, j2)));
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Scalar>> solve_field(Mat a, std::vector<Scalar> b, const Ring& ring) {
  require(ring.is_field(), errc::not_a_field, "solve needs a field");
  require(static_cast<int>(b.size()) == a.rows, errc::degree_mismatch, "rhs size mismatch");
  std::vector<int> pivot_col;
  int r = 0;
  for (int j = 0; j < a.cols && r < a.rows; ++j) {
    int pivot = -1;
    for (int i = r; i < a.rows; ++i)
      if (!ring.is_zero(a.at(i, j))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j2 = 0; j2 < a.cols; ++j2) std::swap(a.at(pivot, j2), a.at(r, j2));
    std::swap(b[pivot], b[r]);
    Scalar lead = ring.inv(a.at(r, j));
    for (int j2 = j; j2 < a.cols; ++j2) a.at(r, j2) = ring.mul(a.at(r, j2), lead);
    b[r] = ring.mul(b[r], lead);
    for (int i = 0; i < a.rows; ++i) {
      if (i == r || ring.is_zero(a.at(i, j))) continue;
      Scalar f = a.at(i, j);
      for (int j2 = j; j2 < a.cols; ++j2)
        a.at(i, j2) = ring.sub(a.at(i, j2), ring.mul(f, a.at(r, j2)));
      b[i] = ring.sub(b[i], ring.mul(f, b[r]));
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (int i = r; i < a.rows; ++i)
    if (!ring.is_zero(b[i])) return std::nullopt;
  std::vector<Scalar> x(a.cols, ring.zero());
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

std::optional<std::vector<Int>> solve_integer(const std::vector<std::vector<Int>>& a_in,
                                              const std::vector<Int>& b) {
  const int rows = static_cast<int>(a_in.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a_in[0].size());
  // Column operations on A are mirrored on U so that A_orig * U = A_cur.
  std::vector<std::vector<Int>> a = a_in;
  std::vector<std::vector<Int>> u(cols, std::vector<Int>(cols, 0));
  for (int j = 0; j < cols; ++j) u[j][j] = 1;

  auto col_swap = [&](int j1, int j2) {
    for (int i = 0; i < rows; ++i) std::swap(a[i][j1], a[i][j2]);
    for (int i = 0; i < cols; ++i) std::swap(u[i][j1], u[i][j2]);
  };
  auto col_axpy = [&](int jdst, int jsrc, const Int& f) {  // col_dst += f * col_src
    for (int i = 0; i < rows; ++i) a[i][jdst] += f * a[i][jsrc];
    for (int i = 0; i < cols; ++i) u[i][jdst] += f * u[i][jsrc];
  };
  auto col_negate = [&](int j) {
    for (int i = 0; i < rows; ++i) a[i][j] = -a[i][j];
    for (int i = 0; i < cols; ++i) u[i][j] = -u[i][j];
  };

  int lead = 0;
  std::vector<std::pair<int, int>> pivots;  // (row, col in reduced A)
  for (int i = 0; i < rows && lead < cols; ++i) {
    // Euclid across columns lead..cols-1 until at most one nonzero remains in row i.
    while (true) {
      int jmin = -1;
      for (int j = lead; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (jmin < 0 || boost::multiprecision::abs(a[i][j]) < boost::multiprecision::abs(a[i][jmin]))
          jmin = j;
      }
      if (jmin < 0) break;
      col_swap(lead, jmin);
      bool done = true;
      for (int j = lead + 1; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        Int q = a[i][j] / a[i][lead];
        col_axpy(j, lead, -q);
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (lead < cols && a[i][lead] != 0) {
      if (a[i][lead] < 0) col_negate(lead);
      pivots.emplace_back(i, lead);
      ++lead;
    }
  }

  // Forward-substitute on the triangular part, checking divisibility.
  std::vector<Int> y(cols, 0);
  std::vector<Int> residual = b;
  for (auto [pi, pj] : pivots) {
    Int r = residual[pi];
    if (r % a[pi][pj] != 0) return std::nullopt;
    Int q = r / a[pi][pj];
    y[pj] = q;
    for (int i = 0; i < rows; ++i) residual[i] -= q * a[i][pj];
  }
  for (int i = 0; i < rows; ++i)
    if (residual[i] != 0) return std::nullopt;

  std::vector<Int> x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] += u[i][j] * y[j];
  return x;
}

std::vector<int> reduced_echelon(std::vector<std::vector<Scalar>>& vecs,
                                 const std::vector<int>& col_order, const Ring& ring) {
  require(ring.is_field(), errc::not_a_field, "echelon basis needs a field");
  std::vector<int> pivots;
  size_t r = 0;
  for (int j : col_order) {
    if (r >= vecs.size()) break;
    size_t pivot = vecs.size();
    for (size_t i = r; i < vecs.size(); ++i)
      if (!ring.is_zero(vecs[i][j])) {
        pivot = i;
        break;
      }
    if (pivot == vecs.size()) continue;
    std::swap(vecs[pivot], vecs[r]);
    Scalar lead = ring.inv(vecs[r][j]);
    for (auto& c : vecs[r]) c = ring.mul(c, lead);
    for (size_t i = 0; i < vecs.size(); ++i) {
      if (i == r || ring.is_zero(vecs[i][j])) continue;
      Scalar f = vecs[i][j];
      for (size_t c = 0; c < vecs[i].size(); ++c)
        vecs[i][c] = ring.sub(vecs[i][c], ring.mul(f, vecs[r][c]));
    }
    pivots.push_back(j);
    ++r;
  }
  vecs.resize(r);
  return pivots;
}

bool in_span(const std::vector<std::vector<Scalar>>& basis, const std::vector<Scalar>& target,
             const Ring& ring) {
  if (basis.empty()) {
    for (const auto& c : target)
      if (!ring.is_zero(c)) return false;
    return true;
  }
  Mat a(static_cast<int>(target.size()), static_cast<int>(basis.size()));
  for (int j = 0; j < a.cols; ++j)
    for (int i = 0; i < a.rows; ++i) a.at(i, j) = basis[j][i];
  return solve_field(a, target, ring).has_value();
}

}  // namespace morselink::alg
