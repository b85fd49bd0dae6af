#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace leechps {

// Exit codes mirrored by the command-line tool.
enum class ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kResource = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kInternal; }
  virtual const char* kind() const noexcept { return "error"; }
};

// Caller violated a documented precondition.
class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
  const char* kind() const noexcept override { return "usage"; }
};

// Argument outside the mathematical domain of a function (e.g. zeta(s <= 1)).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
  const char* kind() const noexcept override { return "domain"; }
};

// Evaluation at a pole of Gamma or of a Gamma-derived factor.
class PoleError : public UsageError {
 public:
  using UsageError::UsageError;
  const char* kind() const noexcept override { return "pole"; }
};

// A certificate or a proven inequality failed. Always a bug or corrupted input.
class IntegrityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "integrity"; }
};

// Numerical procedure could not reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }
  const char* kind() const noexcept override { return "accuracy"; }

 private:
  double achieved_;
};

// An enumeration or time budget was exhausted. `partial_count` reports how far
// the computation got before stopping.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t partial_count)
      : Error(what), partial_count_(partial_count) {}
  std::uint64_t partial_count() const noexcept { return partial_count_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kResource; }
  const char* kind() const noexcept override { return "resource"; }

 private:
  std::uint64_t partial_count_;
};

}  // namespace leechps
