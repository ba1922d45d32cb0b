#pragma once

#include <stdexcept>
#include <string>

namespace grs {

/// Broad failure category; the CLI maps each category to an exit code.
enum class ErrorCategory {
  Input,    // bad parameters or a point outside the admissible domain
  Kernel,   // numerical breakdown while evaluating invariants
  Solver,   // ODE integration stopped before reaching its target
  Verification,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define GRS_DEFINE_ERROR(Name, Category)                          \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what)                        \
        : Error(ErrorCategory::Category, #Name ": " + what) {}    \
  }

GRS_DEFINE_ERROR(DegenerateTangentPlane, Kernel);
GRS_DEFINE_ERROR(LightlikeNormalDirection, Kernel);
GRS_DEFINE_ERROR(NotSpacelike, Kernel);
GRS_DEFINE_ERROR(NotPrincipalParameters, Kernel);
GRS_DEFINE_ERROR(MinimalPoint, Kernel);
GRS_DEFINE_ERROR(LightlikeMeanCurvature, Kernel);
GRS_DEFINE_ERROR(InsufficientResolution, Kernel);

GRS_DEFINE_ERROR(DomainViolation, Input);
GRS_DEFINE_ERROR(SingularConfiguration, Input);
GRS_DEFINE_ERROR(EmptyDomain, Input);
GRS_DEFINE_ERROR(InvalidArgument, Input);
GRS_DEFINE_ERROR(NotMinimal, Input);

GRS_DEFINE_ERROR(SingularityReached, Solver);
GRS_DEFINE_ERROR(StepUnderflow, Solver);
GRS_DEFINE_ERROR(MaxSteps, Solver);

#undef GRS_DEFINE_ERROR

}  // namespace grs
