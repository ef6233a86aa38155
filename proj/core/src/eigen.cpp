#include "irlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "irlab/errors.hpp"

namespace irlab {

Vector EigenDecomp::eigenvector(std::size_t i) const {
  Vector v(V.rows());
  for (std::size_t r = 0; r < V.rows(); ++r) v[r] = V(r, i);
  return v;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p, q), accumulating into v.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e15) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);
  const std::size_t n = a.rows();

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != p && i != q) {
      const double aip = a(i, p);
      const double aiq = a(i, q);
      a(i, p) = aip - s * (aiq + tau * aip);
      a(p, i) = a(i, p);
      a(i, q) = aiq + s * (aip - tau * aiq);
      a(q, i) = a(i, q);
    }
    const double vip = v(i, p);
    const double viq = v(i, q);
    v(i, p) = vip - s * (viq + tau * vip);
    v(i, q) = viq + s * (vip - tau * viq);
  }
}

}  // namespace

EigenDecomp eigendecompose(const SymMatrix& A) {
  const std::size_t n = A.n();
  if (n == 0) throw InputError("eigendecompose: empty matrix");
  Matrix a = A.to_matrix();
  if (!a.all_finite()) throw InputError("eigendecompose: non-finite entries");
  Matrix v = Matrix::identity(n);

  const double norm = a.frobenius_norm();
  const double threshold = 1e-12 * (norm > 0.0 ? norm : 1.0);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_frobenius(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  // Sort eigenpairs descending.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  EigenDecomp d;
  d.lambdas.resize(n);
  d.V = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    d.lambdas[j] = diag[src];
    // Sign convention: largest-magnitude entry of each column positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v(i, src)) > best) {
        best = std::abs(v(i, src));
        arg = i;
      }
    }
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) d.V(i, j) = sign * v(i, src);
  }

  d.delta_s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i)
    d.delta_s = std::min(d.delta_s, d.lambdas[i] - d.lambdas[i + 1]);
  if (n == 1) d.delta_s = 0.0;
  return d;
}

double spectral_norm(const SymMatrix& A) {
  const EigenDecomp d = eigendecompose(A);
  double m = 0.0;
  for (double l : d.lambdas) m = std::max(m, std::abs(l));
  return m;
}

double effective_rank(const std::vector<double>& lambdas) {
  double nuclear = 0.0, op = 0.0;
  for (double l : lambdas) {
    nuclear += std::abs(l);
    op = std::max(op, std::abs(l));
  }
  if (op == 0.0) throw InputError("effective_rank: zero matrix has undefined rank");
  return nuclear / op;
}

double effective_rank(const SymMatrix& W) {
  return effective_rank(eigendecompose(W).lambdas);
}

SymMatrix best_rank_l(const EigenDecomp& decomp, std::size_t L) {
  const std::size_t n = decomp.n();
  if (L < 1 || L > n) throw InputError("best_rank_l: L out of range");
  Matrix m(n, n, 0.0);
  for (std::size_t t = 0; t < L; ++t) {
    const double lam = decomp.lambdas[t];
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = decomp.V(i, t);
      for (std::size_t j = 0; j < n; ++j) m(i, j) += lam * vi * decomp.V(j, t);
    }
  }
  return SymMatrix::symmetrize(m);
}

bool weyl_gap(double lam, double lam_tilde, double E_norm) {
  if (E_norm < 0.0) throw InputError("weyl_gap: negative E_norm");
  return std::abs(lam - lam_tilde) <= E_norm;
}

namespace {

double aligned_inner(const Vector& v, const Vector& v_tilde) {
  if (v.size() != v_tilde.size()) throw InputError("eigenvector dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * v_tilde[i];
  return std::abs(dot);  // sign alignment <v, v~> >= 0
}

}  // namespace

double davis_kahan_sin(const Vector& v, const Vector& v_tilde) {
  const double dot = std::min(1.0, aligned_inner(v, v_tilde));
  return std::sqrt(std::max(0.0, 1.0 - dot * dot));
}

bool davis_kahan_check(double sin_theta, double E_norm, double delta_s) {
  if (delta_s <= 0.0)
    throw DegenerateSpectrumError("davis_kahan_check: zero spectral gap");
  return sin_theta <= 2.0 * E_norm / delta_s;
}

double eigvec_distance_bound(double E_norm, double delta_s) {
  if (delta_s <= 0.0)
    throw DegenerateSpectrumError("eigvec_distance_bound: zero spectral gap");
  if (E_norm < 0.0) throw InputError("eigvec_distance_bound: negative E_norm");
  if (E_norm > delta_s / 2.0)
    throw OutOfRegimeError("eigvec_distance_bound: E_norm > delta_s/2 violates the hypothesis");
  return 2.0 * std::sqrt(2.0) * E_norm / delta_s;
}

double eigvec_distance(const Vector& v, const Vector& v_tilde) {
  if (v.size() != v_tilde.size()) throw InputError("eigenvector dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * v_tilde[i];
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double diff = v[i] - sign * v_tilde[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace irlab
