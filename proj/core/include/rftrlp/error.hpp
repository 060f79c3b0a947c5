#pragma once

#include <stdexcept>
#include <string>

namespace rftrlp {

/// Base class for every error raised by the library. `code()` is a short
/// machine-readable tag that the CLI prints on its error line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed input that violates a type invariant (bad edge, size mismatch).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error("validation", message) {}
};

/// Unparseable file content; the message carries line/field context.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

/// The network is not (gamma+1)-edge-connected, so no fault-tolerant
/// placement can exist.
class ConnectivityError : public Error {
 public:
  explicit ConnectivityError(const std::string& message) : Error("connectivity", message) {}
};

/// An exhaustive routine was asked to handle more nodes than it allows.
class SizeGuardError : public Error {
 public:
  explicit SizeGuardError(const std::string& message) : Error("size_guard", message) {}
};

/// Random instance generation could not satisfy its connectivity target.
class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& message) : Error("generation", message) {}
};

/// Ill-formed optimization model or unbounded relaxation.
class ModelError : public Error {
 public:
  explicit ModelError(const std::string& message) : Error("model", message) {}
};

/// LP-file export or solution-file import failure.
class AdapterError : public Error {
 public:
  explicit AdapterError(const std::string& message) : Error("adapter", message) {}
};

/// The instance admits no feasible placement (e.g. domination rows cannot be met).
class InfeasibleInstanceError : public Error {
 public:
  explicit InfeasibleInstanceError(const std::string& message) : Error("infeasible", message) {}
};

}  // namespace rftrlp
