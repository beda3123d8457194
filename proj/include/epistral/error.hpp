#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epistral {

enum class Errc {
  DuplicateAccount,
  UnknownAccount,
  InsufficientBalance,
  DimensionMismatch,
  UnknownContent,
  ExpiredContent,
  DuplicateEngagement,
  ClusterMismatch,
  DebtCapExceeded,
  UnknownProposal,
  ProposalClosed,
  ProposalConflict,
  NoStake,
  InvalidParameter,
  ParseError,
  ValidationError,
  TooFewPoints,
  IoError,
};

std::string_view errc_name(Errc code);

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Scenario validation failure naming the offending field and constraint.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string constraint)
      : Error(Errc::ValidationError, field + ": " + constraint),
        field_(std::move(field)),
        constraint_(std::move(constraint)) {}
  const std::string& field() const noexcept { return field_; }
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

}  // namespace epistral
