#include "irlab/noise.hpp"

#include <cmath>

#include "irlab/errors.hpp"
#include "irlab/rng.hpp"

namespace irlab {

void NoiseModel::validate() const {
  if (sigma < 0.0) throw InputError("NoiseModel: sigma must be nonnegative");
  if (n < 1) throw InputError("NoiseModel: n must be positive");
  if (!(delta_prime > 0.0 && delta_prime < 1.0))
    throw InputError("NoiseModel: delta' must lie in (0, 1)");
  if (c_abs <= 0.0) throw InputError("NoiseModel: C must be positive");
}

SymMatrix sample_noise(const NoiseModel& model) {
  model.validate();
  Rng rng(model.seed);
  SymMatrix e(model.n);
  // Fixed fill order (row-major upper triangle) keeps the draw independent of
  // sigma: E = sigma * G exactly.
  for (std::size_t i = 0; i < model.n; ++i)
    for (std::size_t j = i; j < model.n; ++j) e.set(i, j, model.sigma * rng.gaussian());
  return e;
}

double e_norm_bound(const NoiseModel& model) {
  model.validate();
  return model.c_abs * model.sigma *
         (std::sqrt(static_cast<double>(model.n)) + std::sqrt(std::log(4.0 / model.delta_prime)));
}

}  // namespace irlab
