#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ringel {

// Base of every error raised by the library. `kind()` is a stable short tag
// used in the machine-readable error JSON the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidEdge : public Error {
 public:
  explicit InvalidEdge(const std::string& what) : Error("invalid-edge", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse-error", what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error("validation-error", what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error("precondition-error", what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error("parameter-error", what) {}
};

// A stated guarantee of a construction was not met by the constructive
// procedure. Seen only below the asymptotic regime or on a bug.
class GuaranteeViolation : public Error {
 public:
  explicit GuaranteeViolation(const std::string& what)
      : Error("guarantee-violation", what) {}
};

class InternalInvariantError : public Error {
 public:
  explicit InternalInvariantError(const std::string& what)
      : Error("internal-invariant", what) {}
};

class DecompositionFailure : public Error {
 public:
  explicit DecompositionFailure(const std::string& what)
      : Error("decomposition-failure", what) {}
};

// Structured failure of a constructive embedder. `stage` names the
// sub-procedure, `step` the greedy step that stalled (-1 when not a step).
class EmbeddingFailure : public Error {
 public:
  EmbeddingFailure(std::string stage, std::int64_t step, const std::string& what)
      : Error("embedding-failure", "[" + stage + "] " + what),
        stage_(std::move(stage)),
        step_(step) {}
  const std::string& stage() const noexcept { return stage_; }
  std::int64_t step() const noexcept { return step_; }

 private:
  std::string stage_;
  std::int64_t step_;
};

// Gadget construction could not complete; `index` is the blocking position
// (target colour index, pair index, ...), or -1.
class ConstructionFailure : public Error {
 public:
  ConstructionFailure(std::int64_t index, const std::string& what)
      : Error("construction-failure", what), index_(index) {}
  std::int64_t index() const noexcept { return index_; }

 private:
  std::int64_t index_;
};

}  // namespace ringel
