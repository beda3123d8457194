#include "epistral/error.hpp"

namespace epistral {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateAccount: return "DuplicateAccount";
    case Errc::UnknownAccount: return "UnknownAccount";
    case Errc::InsufficientBalance: return "InsufficientBalance";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnknownContent: return "UnknownContent";
    case Errc::ExpiredContent: return "ExpiredContent";
    case Errc::DuplicateEngagement: return "DuplicateEngagement";
    case Errc::ClusterMismatch: return "ClusterMismatch";
    case Errc::DebtCapExceeded: return "DebtCapExceeded";
    case Errc::UnknownProposal: return "UnknownProposal";
    case Errc::ProposalClosed: return "ProposalClosed";
    case Errc::ProposalConflict: return "ProposalConflict";
    case Errc::NoStake: return "NoStake";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace epistral
