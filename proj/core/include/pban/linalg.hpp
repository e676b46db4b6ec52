#ifndef PBAN_LINALG_HPP
#define PBAN_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "pban/rational.hpp"

namespace pban {

using Vec = std::vector<Scalar>;

/// Dense rational matrix, row-major.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Scalar(0)) {}

  Scalar& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Mat identity(std::size_t n);
  Vec apply(const Vec& v) const;       // A v
  Vec apply_t(const Vec& v) const;     // A^T v
  Mat mul(const Mat& other) const;     // A B
  Mat transpose() const;
  bool operator==(const Mat& other) const = default;
};

Scalar dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
Vec neg(const Vec& v);
bool is_zero(const Vec& v);
Vec concat(const Vec& a, const Vec& b);

/// Strict lexicographic order on vectors of equal length.
bool lex_less(const Vec& a, const Vec& b);

std::size_t rank(const Mat& m);
std::size_t rank_of_rows(const std::vector<Vec>& rows);

/// Solves A x = b for square A; nullopt when A is singular or the system
/// is inconsistent in the least-squares-free exact sense.
std::optional<Vec> solve_square(const Mat& a, const Vec& b);

/// Any exact solution of A x = b (A rectangular), or nullopt if inconsistent.
std::optional<Vec> solve_any(const Mat& a, const Vec& b);

/// Basis for the kernel of A.
std::vector<Vec> kernel_basis(const Mat& a);

/// Rows spanning the row space of A, reduced (RREF rows, pivots first).
std::vector<Vec> row_space_basis(const Mat& a);

std::optional<Mat> inverse(const Mat& a);

/// Extends the given independent rows to a basis of the full space using
/// standard basis vectors. Throws NotABasis if the rows are dependent.
std::vector<Vec> complete_to_basis(const std::vector<Vec>& rows, std::size_t dim);

Mat mat_from_rows(const std::vector<Vec>& rows);
Mat mat_from_cols(const std::vector<Vec>& cols);

/// Quotient of R^N by span(kernel), in the coordinates of a completed
/// basis. proj is (N-k) x N, section is N x (N-k), proj * section = I.
struct Quotient {
  Mat proj;
  Mat section;
};
Quotient quotient_by(std::size_t N, const std::vector<Vec>& kernel);

}  // namespace pban

#endif
