#include "pban/linalg.hpp"

#include <algorithm>

#include "pban/errors.hpp"

namespace pban {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec Mat::apply(const Vec& v) const {
  if (v.size() != cols) throw DimensionMismatch("Mat::apply");
  Vec out(rows, Scalar(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(at(i, j)) != 0) out[i] += at(i, j) * v[j];
  return out;
}

Vec Mat::apply_t(const Vec& v) const {
  if (v.size() != rows) throw DimensionMismatch("Mat::apply_t");
  Vec out(cols, Scalar(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(at(i, j)) != 0) out[j] += at(i, j) * v[i];
  return out;
}

Mat Mat::mul(const Mat& other) const {
  if (cols != other.rows) throw DimensionMismatch("Mat::mul");
  Mat out(rows, other.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      if (sgn(at(i, k)) == 0) continue;
      for (std::size_t j = 0; j < other.cols; ++j)
        out.at(i, j) += at(i, k) * other.at(k, j);
    }
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot");
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add");
  Vec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub");
  Vec out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vec scale(const Scalar& c, const Vec& v) {
  Vec out(v);
  for (auto& x : out) x *= c;
  return out;
}

Vec neg(const Vec& v) { return scale(Scalar(-1), v); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

namespace {

// Row-reduces m in place; returns pivot columns. Full RREF.
std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(piv, j));
    Scalar inv = 1 / m.at(row, col);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Scalar f = m.at(i, col);
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Mat& m) {
  Mat copy = m;
  return rref(copy).size();
}

std::size_t rank_of_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  return rank(mat_from_rows(rows));
}

std::optional<Vec> solve_any(const Mat& a, const Vec& b) {
  if (b.size() != a.rows) throw DimensionMismatch("solve_any");
  Mat aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  auto pivots = rref(aug);
  // Inconsistent iff the augmented column is a pivot.
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
  Vec x(a.cols, Scalar(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
  return x;
}

std::optional<Vec> solve_square(const Mat& a, const Vec& b) {
  if (a.rows != a.cols) throw DimensionMismatch("solve_square");
  if (rank(a) != a.rows) return std::nullopt;
  return solve_any(a, b);
}

std::vector<Vec> kernel_basis(const Mat& a) {
  Mat copy = a;
  auto pivots = rref(copy);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free_col = 0; free_col < a.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(a.cols, Scalar(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -copy.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vec> row_space_basis(const Mat& a) {
  Mat copy = a;
  auto pivots = rref(copy);
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Vec v(a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) v[j] = copy.at(r, j);
    rows.push_back(std::move(v));
  }
  return rows;
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows != a.cols) throw DimensionMismatch("inverse");
  std::size_t n = a.rows;
  if (n == 0) return Mat(0, 0);
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<Vec> complete_to_basis(const std::vector<Vec>& rows, std::size_t dim) {
  std::vector<Vec> basis = rows;
  if (rank_of_rows(basis) != basis.size()) throw NotABasis("dependent rows");
  for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
    Vec e(dim, Scalar(0));
    e[k] = 1;
    basis.push_back(e);
    if (rank_of_rows(basis) != basis.size()) basis.pop_back();
  }
  if (basis.size() != dim) throw NotABasis("could not complete to a basis");
  return basis;
}

Mat mat_from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat(0, 0);
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw DimensionMismatch("mat_from_rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat mat_from_cols(const std::vector<Vec>& cols) {
  return mat_from_rows(cols).transpose();
}

Quotient quotient_by(std::size_t N, const std::vector<Vec>& kernel) {
  auto basis = complete_to_basis(kernel, N);
  Mat B = mat_from_cols(basis);
  auto Binv = inverse(B);
  if (!Binv) throw NotABasis("quotient basis is singular");
  const std::size_t k = kernel.size();
  Quotient q;
  q.proj = Mat(N - k, N);
  q.section = Mat(N, N - k);
  for (std::size_t i = k; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) q.proj.at(i - k, j) = Binv->at(i, j);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = k; j < N; ++j) q.section.at(i, j - k) = B.at(i, j);
  return q;
}

}  // namespace pban
