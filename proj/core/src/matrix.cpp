#include "irlab/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "irlab/errors.hpp"

namespace irlab {

Matrix Matrix::identity(std::size_t n, double scale) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix dimension mismatch in +=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("matrix dimension mismatch in -=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch in *");
  Matrix c(a.rows_, b.cols_, 0.0);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

SymMatrix SymMatrix::from_upper(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("from_upper: matrix not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) throw InputError("from_upper: non-finite entry");
      s.a_[i * s.n_ + j] = v;
      s.a_[j * s.n_ + i] = v;
    }
  }
  return s;
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("symmetrize: matrix not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      if (!std::isfinite(v)) throw InputError("symmetrize: non-finite entry");
      s.a_[i * s.n_ + j] = v;
      s.a_[j * s.n_ + i] = v;
    }
  }
  return s;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw InputError("diagonal: non-finite entry");
    s.a_[i * s.n_ + i] = d[i];
  }
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n, double scale) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.a_[i * n + i] = scale;
  return s;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  if (!std::isfinite(v)) throw InputError("set: non-finite entry");
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  m.data() = a_;
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return t;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw InputError("symmetric matrix dimension mismatch in +");
  SymMatrix c(a.n_);
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
  return c;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  if (a.n_ != b.n_) throw InputError("symmetric matrix dimension mismatch in -");
  SymMatrix c(a.n_);
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
  return c;
}

SymMatrix operator*(const SymMatrix& a, double s) {
  SymMatrix c(a.n_);
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] = a.a_[i] * s;
  return c;
}

}  // namespace irlab
