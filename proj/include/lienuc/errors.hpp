#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace lienuc {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Floating point trouble: non-finite samples, eigensolver stalls.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::size_t> node = std::nullopt)
      : Error(what), node_(node) {}

  std::optional<std::size_t> node() const { return node_; }

 private:
  std::optional<std::size_t> node_;
};

// Request beyond what the implementation supports (e.g. very large spins).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An operation refused because the matching criterion series diverges.
class DivergenceRefused : public Error {
 public:
  using Error::Error;
};

}  // namespace lienuc
