#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace irlab {

// Deterministic Gaussian source. The generator algorithm is pinned so outputs
// are bit-identical across platforms:
//   - std::mt19937_64 (bit-exact by the C++ standard),
//   - uniforms built from the top 53 bits: u = (x >> 11) * 2^-53,
//   - Box-Muller transform for normals.
// std::normal_distribution / std::uniform_real_distribution are deliberately
// avoided: their output sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; draws two uniforms per pair and caches
  // the second variate.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();  // avoid log(0)
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace irlab
