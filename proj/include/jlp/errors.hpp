#ifndef JLP_ERRORS_HPP
#define JLP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jlp {

// Failure classes. The numeric values double as CLI exit codes and C API
// status codes, so keep them stable.
enum class ErrorCode : int {
  check_failed = 1,     // a requested audit/acceptance check did not pass
  bad_argument = 2,     // malformed call or command line
  ingestion = 3,        // unreadable/invalid input file
  parameter_range = 4,  // privacy/accuracy parameters outside the valid domain
  budget_exceeded = 5,  // allocation would exceed the configured byte budget
  numeric_failure = 6,  // factorization did not converge or produced NaN/Inf
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace jlp

#endif  // JLP_ERRORS_HPP
