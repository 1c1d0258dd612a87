#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace liouville {

// Base class for every error raised by the library. kind() is the stable
// machine-readable tag used by the CLI when rendering errors as JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

// Evaluation point sits on (or within the proximity threshold of) a pole.
// factor() names the sub-expression that blew up.
class PoleError : public Error {
 public:
  PoleError(std::string factor, const std::string& what)
      : Error("PoleError", what), factor_(std::move(factor)) {}

  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double error_estimate, int subdivisions)
      : Error("NonConvergence", what),
        error_estimate_(error_estimate),
        subdivisions_(subdivisions) {}

  double error_estimate() const noexcept { return error_estimate_; }
  int subdivisions() const noexcept { return subdivisions_; }

 private:
  double error_estimate_;
  int subdivisions_;
};

class InvalidDecay : public Error {
 public:
  explicit InvalidDecay(const std::string& what) : Error("InvalidDecay", what) {}
};

// theta <-> mu_boundary relation evaluated at its branch junction.
class BranchError : public Error {
 public:
  explicit BranchError(const std::string& what) : Error("BranchError", what) {}
};

class SingularGram : public Error {
 public:
  SingularGram(const std::string& what, double condition)
      : Error("SingularGram", what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// Truncated series whose empirical coefficient growth defeats the geometric
// tail bound at the requested argument.
class TailWarning : public Error {
 public:
  TailWarning(const std::string& what, double ratio) : Error("TailWarning", what), ratio_(ratio) {}

  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

}  // namespace liouville
