#pragma once

#include <stdexcept>
#include <string>

namespace mcilp {

/// Input that could not be parsed (CLI exit status 2, HTTP 400).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The set or polyhedron in question is empty (CLI exit status 3, HTTP 409).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyPolyhedron : public InfeasibleError {
 public:
  EmptyPolyhedron() : InfeasibleError("polyhedron is empty") {}
  using InfeasibleError::InfeasibleError;
};

class EmptySet : public InfeasibleError {
 public:
  EmptySet() : InfeasibleError("encoded set is empty") {}
  using InfeasibleError::InfeasibleError;
};

/// A precondition of an operation was violated (CLI exit status 4, HTTP 422).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MCILP_CONTRACT_ERROR(Name)                        \
  class Name : public ContractError {                     \
   public:                                                \
    explicit Name(const std::string& what = #Name)        \
        : ContractError(what) {}                          \
  };

MCILP_CONTRACT_ERROR(UnboundedPolyhedron)
MCILP_CONTRACT_ERROR(NonSimplicialCone)
MCILP_CONTRACT_ERROR(DegenerateSubstitution)
MCILP_CONTRACT_ERROR(NonGenericLambda)
MCILP_CONTRACT_ERROR(DimensionMismatch)
MCILP_CONTRACT_ERROR(NonNormalizedInput)
MCILP_CONTRACT_ERROR(UniverseViolation)
MCILP_CONTRACT_ERROR(NegativeMoment)
MCILP_CONTRACT_ERROR(UnboundedSupport)
MCILP_CONTRACT_ERROR(ArithmeticOverflow)
MCILP_CONTRACT_ERROR(TooLarge)
MCILP_CONTRACT_ERROR(InvalidNorm)

#undef MCILP_CONTRACT_ERROR

/// Process exit code for an error: 2 parse, 3 infeasible, 4 contract, 1 other.
inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const InfeasibleError*>(&e)) return 3;
  if (dynamic_cast<const ContractError*>(&e)) return 4;
  return 1;
}

}  // namespace mcilp
