#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

/// Failure classes surfaced by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  invalid_input,
  precision_exhausted,
  truncation_insufficient,
  not_a_unit_series,
  size_cap_exceeded,
  torsion_assumption_violated,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

/// A value could not be told apart from zero at the working precision.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error(ErrorKind::precision_exhausted, what) {}
};

class TruncationInsufficient : public Error {
 public:
  explicit TruncationInsufficient(const std::string& what)
      : Error(ErrorKind::truncation_insufficient, what) {}
};

class NotAUnitSeries : public Error {
 public:
  explicit NotAUnitSeries(const std::string& what)
      : Error(ErrorKind::not_a_unit_series, what) {}
};

class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& what)
      : Error(ErrorKind::size_cap_exceeded, what) {}
};

class TorsionAssumptionViolated : public Error {
 public:
  explicit TorsionAssumptionViolated(const std::string& what)
      : Error(ErrorKind::torsion_assumption_violated, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace iwasawa
