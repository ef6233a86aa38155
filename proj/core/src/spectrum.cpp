#include "irlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irlab/errors.hpp"
#include "irlab/rng.hpp"

namespace irlab {

std::vector<double> SpectrumSpec::full_spectrum() const {
  if (leading.empty()) throw InputError("SpectrumSpec: empty leading eigenvalue list");
  if (leading.size() > n) throw InputError("SpectrumSpec: more leading eigenvalues than n");
  for (std::size_t i = 0; i < leading.size(); ++i) {
    if (leading[i] <= 0.0) throw InputError("SpectrumSpec: leading eigenvalues must be positive");
    if (i > 0 && leading[i] >= leading[i - 1])
      throw InputError("SpectrumSpec: leading eigenvalues must be strictly descending");
  }
  std::vector<double> full = leading;
  const std::size_t tail = n - leading.size();
  if (tail > 0) {
    if (tail_fill == TailFill::constant) {
      if (tail_value < 0.0 || tail_value > leading.back())
        throw InputError("SpectrumSpec: constant tail must lie in [0, lambda_L]");
      full.insert(full.end(), tail, tail_value);
    } else {
      if (tail_lo <= 0.0 || tail_hi < tail_lo || tail_hi > leading.back())
        throw InputError("SpectrumSpec: log-spaced tail range invalid");
      const double lh = std::log(tail_hi), ll = std::log(tail_lo);
      for (std::size_t i = 0; i < tail; ++i) {
        const double t = tail == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(tail - 1);
        full.push_back(std::exp(lh + t * (ll - lh)));
      }
    }
  }
  return full;
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.gaussian();

  // Modified Gram-Schmidt on the columns of g.
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
    for (std::size_t p = 0; p < j; ++p) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q(i, p) * col[i];
      for (std::size_t i = 0; i < n; ++i) col[i] -= dot * q(i, p);
    }
    double norm = 0.0;
    for (double v : col) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw InputError("random_orthogonal: degenerate Gaussian draw");
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / norm;
  }

  // Normalize the determinant sign by flipping the last column if needed:
  // det(Q) = product of R's diagonal signs; MGS makes those positive, so the
  // sign is carried entirely by Q. Compute it via a rough LU-free proxy:
  // flip the last column when det < 0 (evaluated by Gaussian elimination).
  Matrix lu = q;
  double det = 1.0;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(lu(r, c)) > std::abs(lu(piv, c))) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(lu(c, k), lu(piv, k));
      det = -det;
    }
    const double d = lu(c, c);
    det *= d;
    if (d == 0.0) break;
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = lu(r, c) / d;
      for (std::size_t k = c; k < n; ++k) lu(r, k) -= f * lu(c, k);
    }
  }
  if (det < 0.0)
    for (std::size_t i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);
  return q;
}

SynthesizedTarget synthesize(const SpectrumSpec& spec) {
  SynthesizedTarget t;
  t.lambdas = spec.full_spectrum();
  t.V = random_orthogonal(spec.n, spec.basis_seed);

  Matrix w(spec.n, spec.n, 0.0);
  for (std::size_t k = 0; k < spec.n; ++k) {
    const double lam = t.lambdas[k];
    for (std::size_t i = 0; i < spec.n; ++i) {
      const double vik = t.V(i, k);
      for (std::size_t j = 0; j < spec.n; ++j) w(i, j) += lam * vik * t.V(j, k);
    }
  }
  t.W = SymMatrix::symmetrize(w);

  t.delta_s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < spec.n; ++i)
    t.delta_s = std::min(t.delta_s, t.lambdas[i] - t.lambdas[i + 1]);
  if (spec.n == 1) t.delta_s = 0.0;
  return t;
}

}  // namespace irlab
