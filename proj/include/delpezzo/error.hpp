#pragma once

#include <stdexcept>
#include <string>

namespace delpezzo {

enum class ErrorKind {
  IncompatibleBases,
  InvalidLabel,
  NotARootBasis,
  NotARoot,
  RankOutOfRange,
  OracleRankCap,
  NotEigenbasisForm,
  InexactDivision,
  OutsideField,
  InfiniteBaseLocus,
  EmptySeries,
  Unsatisfiable,
  GenericityFailure,
  Parse,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::IncompatibleBases: return "incompatible_bases";
    case ErrorKind::InvalidLabel: return "invalid_label";
    case ErrorKind::NotARootBasis: return "not_a_root_basis";
    case ErrorKind::NotARoot: return "not_a_root";
    case ErrorKind::RankOutOfRange: return "rank_out_of_range";
    case ErrorKind::OracleRankCap: return "oracle_rank_cap";
    case ErrorKind::NotEigenbasisForm: return "not_eigenbasis_form";
    case ErrorKind::InexactDivision: return "inexact_division";
    case ErrorKind::OutsideField: return "outside_field";
    case ErrorKind::InfiniteBaseLocus: return "infinite_base_locus";
    case ErrorKind::EmptySeries: return "empty_series";
    case ErrorKind::Unsatisfiable: return "unsatisfiable";
    case ErrorKind::GenericityFailure: return "genericity_failure";
    case ErrorKind::Parse: return "parse_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace delpezzo
