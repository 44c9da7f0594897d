#pragma once

#include <stdexcept>
#include <string>

namespace cavitylab {

// Base for all domain errors. `code()` is the stable machine-readable name
// used by the CLI error JSON (exit code 2).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define CAVITYLAB_ERROR(Name)                                     \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}  \
  }

CAVITYLAB_ERROR(ExtRealError);           // undefined extended-real arithmetic
CAVITYLAB_ERROR(InvalidAssignment);
CAVITYLAB_ERROR(ParseError);
CAVITYLAB_ERROR(InvalidView);
CAVITYLAB_ERROR(RefusedTooLarge);
CAVITYLAB_ERROR(Infeasible);
CAVITYLAB_ERROR(NotATree);
CAVITYLAB_ERROR(InfeasibleReference);
CAVITYLAB_ERROR(InvalidDepth);
CAVITYLAB_ERROR(InvalidParams);
CAVITYLAB_ERROR(EncodeError);
CAVITYLAB_ERROR(UnsupportedCorrelation);

#undef CAVITYLAB_ERROR

}  // namespace cavitylab
