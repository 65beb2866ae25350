#ifndef RISKDIR_ERROR_H_
#define RISKDIR_ERROR_H_

#include <stdexcept>
#include <string>

namespace riskdir {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kEmptySet,
  kNoExceedances,
  kAllExceed,
  kInsufficientData,
  kUnsupported,
  kNonMonotoneOracle,
  kParse,
  kIo,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (and the CLI
// exit-status mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace riskdir

#endif  // RISKDIR_ERROR_H_
