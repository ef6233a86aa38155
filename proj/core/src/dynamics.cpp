#include "irlab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "irlab/eigen.hpp"
#include "irlab/errors.hpp"

namespace irlab {

void DynamicsConfig::validate() const {
  if (depth < 1) throw InputError("DynamicsConfig: depth must be >= 1");
  if (!(eta > 0.0)) throw InputError("DynamicsConfig: eta must be positive");
  if (!(alpha > 0.0)) throw InputError("DynamicsConfig: alpha must be positive");
  if (max_iters < 1) throw InputError("DynamicsConfig: max_iters must be >= 1");
  if (record_every < 1) throw InputError("DynamicsConfig: record_every must be >= 1");
}

FactorChain FactorChain::identical_init(std::size_t depth, std::size_t n, double alpha) {
  FactorChain c;
  c.factors.assign(depth, Matrix::identity(n, alpha));
  return c;
}

Matrix FactorChain::product() const {
  if (factors.empty()) throw InputError("FactorChain: empty chain");
  Matrix p = factors.back();  // W_N
  for (std::size_t j = factors.size() - 1; j-- > 0;) p = p * factors[j];
  return p;
}

double FactorChain::factor_spread() const {
  double m = 0.0;
  for (std::size_t a = 0; a + 1 < factors.size(); ++a) {
    const Matrix diff = factors[a] - factors[a + 1];
    m = std::max(m, diff.max_abs());
  }
  return m;
}

double chain_loss(const FactorChain& chain, const SymMatrix& target) {
  const Matrix r = chain.product() - target.to_matrix();
  const double f = r.frobenius_norm();
  return 0.5 * f * f;
}

std::vector<Matrix> chain_gradient(const FactorChain& chain, const SymMatrix& target) {
  const std::size_t N = chain.factors.size();
  const std::size_t n = target.n();
  if (chain.factors.front().rows() != n) throw InputError("chain_gradient: dimension mismatch");

  // Prefix products P_j = W_{j-1} ... W_1 and suffix products S_j = W_N ... W_{j+1}.
  std::vector<Matrix> prefix(N + 1), suffix(N + 1);
  prefix[0] = Matrix::identity(n);
  for (std::size_t j = 0; j < N; ++j) prefix[j + 1] = chain.factors[j] * prefix[j];
  suffix[N] = Matrix::identity(n);
  for (std::size_t j = N; j-- > 0;) suffix[j] = suffix[j + 1] * chain.factors[j];

  const Matrix residual = prefix[N] - target.to_matrix();  // W_N...W_1 - target
  std::vector<Matrix> grads(N);
  for (std::size_t j = 0; j < N; ++j) {
    // d/dW_j (1/2)||W_N...W_1 - T||_F^2 = S_{j+1}^T R P_j^T with
    // S_{j+1} = W_N...W_{j+2} ... here suffix[j + 1].
    grads[j] = suffix[j + 1].transposed() * residual * prefix[j].transposed();
  }
  return grads;
}

FactorChain factor_gd_step(const FactorChain& chain, const SymMatrix& target,
                           const DynamicsConfig& cfg) {
  cfg.validate();
  const std::vector<Matrix> grads = chain_gradient(chain, target);
  FactorChain next = chain;
  for (std::size_t j = 0; j < next.factors.size(); ++j) {
    next.factors[j] -= cfg.eta * grads[j];
    if (!next.factors[j].all_finite())
      throw DivergenceError("factor_gd_step: non-finite factor entries");
  }
  return next;
}

std::vector<TrajectoryRecord> simulate_factors(const SymMatrix& target, const Matrix& basis,
                                               const DynamicsConfig& cfg) {
  cfg.validate();
  const std::size_t n = target.n();
  FactorChain chain = FactorChain::identical_init(cfg.depth, n, cfg.alpha);
  std::vector<TrajectoryRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.max_iters / cfg.record_every) + 2);

  auto record = [&](long k) {
    const Matrix w = chain.product();
    TrajectoryRecord r;
    r.k = k;
    r.diag.resize(n);
    // Factor channel values d_i(k): diag of basis^T W_1(k) basis. Under
    // identical initialization every factor carries the same diagonal.
    const Matrix& w1 = chain.factors.front();
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        double wa = 0.0;
        for (std::size_t b = 0; b < n; ++b) wa += w1(a, b) * basis(b, i);
        acc += basis(a, i) * wa;
      }
      r.diag[i] = acc;
    }
    const Matrix res = w - target.to_matrix();
    const double f = res.frobenius_norm();
    r.loss = 0.5 * f * f;
    // The product's eigenvalues are the d_i^N, so the effective rank of W(k)
    // reads off the channel values directly.
    double nuclear = 0.0, op = 0.0;
    for (double d : r.diag) {
      double dn = 1.0;
      for (std::size_t p = 0; p < cfg.depth; ++p) dn *= d;
      nuclear += std::abs(dn);
      op = std::max(op, std::abs(dn));
    }
    r.eff_rank = op > 0.0 ? nuclear / op : 0.0;
    out.push_back(std::move(r));
  };

  record(0);
  for (long k = 1; k <= cfg.max_iters; ++k) {
    try {
      chain = factor_gd_step(chain, target, cfg);
    } catch (const DivergenceError&) {
      throw DivergenceError("simulate_factors: divergence", k);
    }
    if (k % cfg.record_every == 0) record(k);
  }
  return out;
}

double scalar_step(double d, double lam_tilde, const DynamicsConfig& cfg) {
  const std::size_t N = cfg.depth;
  double dn1 = 1.0;  // d^{N-1}
  for (std::size_t i = 1; i < N; ++i) dn1 *= d;
  const double dn = dn1 * d;  // d^N
  const double next = d - cfg.eta * dn1 * (dn - lam_tilde);
  if (!std::isfinite(next)) throw DivergenceError("scalar_step: overflow");
  return next;
}

std::vector<TrajectoryRecord> scalar_simulate(double lam_tilde, const DynamicsConfig& cfg) {
  cfg.validate();
  std::vector<TrajectoryRecord> out;
  double d = cfg.alpha;
  auto record = [&](long k) {
    TrajectoryRecord r;
    r.k = k;
    r.diag = {d};
    double dn = 1.0;
    for (std::size_t i = 0; i < cfg.depth; ++i) dn *= d;
    const double res = dn - lam_tilde;
    r.loss = 0.5 * res * res;
    r.eff_rank = 1.0;
    out.push_back(std::move(r));
  };
  record(0);
  for (long k = 1; k <= cfg.max_iters; ++k) {
    d = scalar_step(d, lam_tilde, cfg);
    if (std::abs(d) > 1e12) throw DivergenceError("scalar_simulate: |d| exceeded 1e12", k);
    if (k % cfg.record_every == 0) record(k);
    double dn = 1.0;
    for (std::size_t i = 0; i < cfg.depth; ++i) dn *= d;
    if (std::abs(dn - lam_tilde) <= 1e-14) {
      if (k % cfg.record_every != 0) record(k);
      break;
    }
  }
  return out;
}

StepSizeBounds step_size_bounds(double lam_tilde, const DynamicsConfig& cfg) {
  const double N = static_cast<double>(cfg.depth);
  const double root = std::pow(std::abs(lam_tilde), 1.0 / N);
  const double M = std::max(cfg.alpha, root);
  StepSizeBounds b;
  if (lam_tilde > 0.0) {
    b.convergence = 1.0 / (N * std::pow(M, 2.0 * N - 2.0));
  } else if (cfg.alpha >= root) {  // lam_tilde <= 0
    b.convergence = std::pow(cfg.alpha, -2.0 * N + 2.0);
  } else {  // lam_tilde < 0, alpha < |lam_tilde|^{1/N}
    b.convergence = 1.0 / ((3.0 * N - 2.0) * std::pow(std::abs(lam_tilde), 2.0 - 2.0 / N));
  }
  if (lam_tilde >= 0.0) {
    b.complexity = 1.0 / (2.0 * N * std::pow(M, 2.0 * N - 2.0));
  } else {
    b.complexity = 1.0 / ((3.0 * N - 2.0) * std::pow(M, 2.0 * N - 2.0));
  }
  return b;
}

double scalar_limit(double lam_tilde, const DynamicsConfig& cfg) {
  if (cfg.depth < 2) throw InputError("scalar_limit: requires N >= 2");
  const StepSizeBounds b = step_size_bounds(lam_tilde, cfg);
  if (cfg.eta >= b.convergence)
    throw OutOfRegimeError("scalar_limit: eta exceeds the convergence threshold");
  const double plus = std::max(lam_tilde, 0.0);
  return std::pow(plus, 1.0 / static_cast<double>(cfg.depth));
}

std::optional<long> hitting_time(const std::vector<TrajectoryRecord>& trajectory,
                                 double target_value, double tol) {
  return hitting_time(trajectory, 0, target_value, tol);
}

std::optional<long> hitting_time(const std::vector<TrajectoryRecord>& trajectory, std::size_t i,
                                 double target_value, double tol) {
  if (!(tol > 0.0)) throw InputError("hitting_time: tol must be positive");
  for (const TrajectoryRecord& r : trajectory)
    if (i < r.diag.size() && std::abs(r.diag[i] - target_value) <= tol) return r.k;
  return std::nullopt;
}

}  // namespace irlab
