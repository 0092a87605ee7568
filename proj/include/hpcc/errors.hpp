#pragma once

#include <stdexcept>
#include <string>

namespace hpcc {

/// Base class for every error raised by the toolkit. The CLI maps these to
/// exit code 1 unless the subclass is a ParseError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HPCC_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    explicit Name(const std::string& w)  \
        : Error(std::string(#Name ": ") + w) {} \
  }

HPCC_DEFINE_ERROR(InvalidField);
HPCC_DEFINE_ERROR(DuplicateEvaluationPoint);
HPCC_DEFINE_ERROR(NoSolution);
HPCC_DEFINE_ERROR(Underdetermined);
HPCC_DEFINE_ERROR(DimensionMismatch);
HPCC_DEFINE_ERROR(InvalidT);
HPCC_DEFINE_ERROR(InvalidParameters);
HPCC_DEFINE_ERROR(OutOfRange);
HPCC_DEFINE_ERROR(UnknownDesign);
HPCC_DEFINE_ERROR(DesignInvalid);
HPCC_DEFINE_ERROR(MultiplicityOutOfRange);
HPCC_DEFINE_ERROR(WitnessNotFound);
HPCC_DEFINE_ERROR(FieldTooSmall);
HPCC_DEFINE_ERROR(InsufficientShares);
HPCC_DEFINE_ERROR(SingularSelection);
HPCC_DEFINE_ERROR(BadDemand);
HPCC_DEFINE_ERROR(BadActiveSet);
HPCC_DEFINE_ERROR(DecodeFailed);
HPCC_DEFINE_ERROR(DisjointDomains);

#undef HPCC_DEFINE_ERROR

/// Malformed input text. Kept apart from the semantic errors so front ends
/// can distinguish "could not read" from "read but invalid".
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& w) : Error("ParseError: " + w) {}
};

}  // namespace hpcc
