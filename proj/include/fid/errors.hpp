#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fid {

// Exception with a stable machine-readable code. The CLI surfaces these on
// stderr as "ERROR:<code>:<message>".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain", message) {}
};

class NoSignChange : public Error {
 public:
  explicit NoSignChange(const std::string& message) : Error("no_sign_change", message) {}
};

// Carries the best iterate seen so far so callers can inspect how close the
// solver got before giving up.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& message, double best_iterate)
      : Error("no_convergence", message), best_(best_iterate) {}

  double best_iterate() const noexcept { return best_; }

 private:
  double best_;
};

class EmptySample : public Error {
 public:
  explicit EmptySample(const std::string& message) : Error("empty_sample", message) {}
};

class NotSimple : public Error {
 public:
  explicit NotSimple(const std::string& message) : Error("not_simple", message) {}
};

class BracketFailure : public Error {
 public:
  explicit BracketFailure(const std::string& message) : Error("bracket_failure", message) {}
};

class RejectionStall : public Error {
 public:
  explicit RejectionStall(const std::string& message) : Error("rejection_stall", message) {}
};

class NonFiniteNormalization : public Error {
 public:
  explicit NonFiniteNormalization(const std::string& message)
      : Error("non_finite_normalization", message) {}
};

class ZeroDensity : public Error {
 public:
  explicit ZeroDensity(const std::string& message) : Error("zero_density", message) {}
};

class AllRejected : public Error {
 public:
  explicit AllRejected(const std::string& message) : Error("all_rejected", message) {}
};

class NonOrthonormalBasis : public Error {
 public:
  explicit NonOrthonormalBasis(const std::string& message)
      : Error("non_orthonormal_basis", message) {}
};

}  // namespace fid
