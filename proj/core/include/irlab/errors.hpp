#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace irlab {

// Error categories map onto the CLI exit codes.
enum class errc : int {
  input = 2,
  out_of_regime = 3,
  divergence = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Bad inputs: dimension mismatches, non-finite entries, out-of-range arguments.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(errc::input, what) {}
};

// A theorem hypothesis does not hold for the requested evaluation point.
class OutOfRegimeError : public Error {
 public:
  explicit OutOfRegimeError(const std::string& what) : Error(errc::out_of_regime, what) {}
};

// Repeated eigenvalues / zero spectral gap; per-vector perturbation bounds refuse.
class DegenerateSpectrumError : public OutOfRegimeError {
 public:
  explicit DegenerateSpectrumError(const std::string& what) : OutOfRegimeError(what) {}
};

// Iterates blew up; carries the offending iteration when known.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::optional<long> iteration = std::nullopt)
      : Error(errc::divergence, what), iteration_(iteration) {}
  std::optional<long> iteration() const noexcept { return iteration_; }

 private:
  std::optional<long> iteration_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(errc::io, what) {}
};

}  // namespace irlab
