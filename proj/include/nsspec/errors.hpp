#pragma once

#include <stdexcept>
#include <string>

namespace nsspec {

// Exit-code contract for the CLI: InputError -> 1, InvariantError -> 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnstableFilter : public InputError {
 public:
  explicit UnstableFilter(double max_root_modulus)
      : InputError("unstable filter: characteristic root modulus " +
                   std::to_string(max_root_modulus) + " >= 1"),
        max_root_modulus(max_root_modulus) {}
  double max_root_modulus;
};

class NonConvergent : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

class WindowTooLong : public InputError {
 public:
  using InputError::InputError;
};

class AsymmetricLag : public InputError {
 public:
  using InputError::InputError;
};

class EmptySpectrum : public InputError {
 public:
  using InputError::InputError;
};

class ZeroSignal : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace nsspec
