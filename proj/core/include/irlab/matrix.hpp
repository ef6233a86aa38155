#pragma once

#include <cstddef>
#include <vector>

namespace irlab {

// Minimal dense row-major matrix. Dimensions stay small (n <= ~100) throughout,
// so there is no blocking or expression machinery here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, double scale = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<double>& data() const noexcept { return a_; }
  std::vector<double>& data() noexcept { return a_; }

  Matrix transposed() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Dense real symmetric matrix. Symmetry is enforced at construction by
// mirroring the upper triangle; entries must be finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  // Mirrors the upper triangle (including diagonal) of `m` ignoring its lower
  // triangle. Throws InputError on non-finite entries or non-square input.
  static SymMatrix from_upper(const Matrix& m);
  // Symmetrizes as (m + m^T)/2; used when m is symmetric up to roundoff.
  static SymMatrix symmetrize(const Matrix& m);
  static SymMatrix diagonal(const std::vector<double>& d);
  static SymMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Sets (i,j) and (j,i) simultaneously.
  void set(std::size_t i, std::size_t j, double v);

  Matrix to_matrix() const;
  const std::vector<double>& data() const noexcept { return a_; }

  double frobenius_norm() const;
  double max_abs() const;
  double trace() const;

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(const SymMatrix& a, double s);

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

}  // namespace irlab
