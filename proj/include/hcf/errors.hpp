#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace hcf {

// Malformed input or a violated precondition the caller controls (CLI exit 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The ball family cannot cover the target.
class UncoverableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked inequality or certificate failed (CLI exit 2). Carries the full report.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, nlohmann::json payload)
      : std::runtime_error(what), payload_(std::move(payload)) {}
  const nlohmann::json& payload() const { return payload_; }

 private:
  nlohmann::json payload_;
};

class DecompositionViolation : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

// HC_{m-1}(V ∩ C) exceeds c0(k) R^{m-1} on some face.
class PushoutPreconditionError : public std::runtime_error {
 public:
  PushoutPreconditionError(const std::string& what, double content, double limit)
      : std::runtime_error(what), content(content), limit(limit) {}
  double content;
  double limit;
};

}  // namespace hcf
