#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace redchain {

// Dense row-major square matrix, sized for moment systems (a few hundred
// unknowns at most), solved directly.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Solves A x = b by LU factorization with partial pivoting.
// Throws std::runtime_error if the matrix is numerically singular.
std::vector<double> solve_dense(DenseMatrix a, std::vector<double> b);

// Solves a tridiagonal system by elimination. Bands are given as
// sub/main/super diagonals; sub[0] and super[n-1] are ignored.
// Throws std::runtime_error on a zero pivot.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs);

// Least-squares solution of an overdetermined system via the normal
// equations. Design matrices here are tiny (3 or 4 columns).
std::vector<double> solve_least_squares(const DenseMatrix& a, std::span<const double> b);

// max_i |(A x - b)_i|
double max_residual(const DenseMatrix& a, std::span<const double> x, std::span<const double> b);

}  // namespace redchain
