#pragma once

#include <stdexcept>
#include <string>

namespace itres {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands were built over different variable registries.
class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("operands belong to different variable registries") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A rational form violates the affine-linear denominator contract.
class InvalidForm : public Error {
 public:
  using Error::Error;
};

/// No Q-polynomial is known for the requested jet length.
class QTableExhausted : public Error {
 public:
  explicit QTableExhausted(int k)
      : Error("Q-table exhausted: no Q_" + std::to_string(k) +
              " entry; Q_k for larger k is the multidegree of a Borel orbit closure "
              "and must be supplied as external data (load a Q-table file)"),
        k_(k) {}
  int k() const { return k_; }

 private:
  int k_;
};

/// Input rejected before any computation starts.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace itres
