#pragma once

#include <stdexcept>
#include <string>

namespace koenigs {

enum class ErrorKind {
  Domain,        // input outside the operation's domain (pole, branch cut, exterior point)
  Overflow,      // non-finite intermediate value
  Instability,   // orbit left the closed disc numerically
  Precondition,  // caller violated a documented precondition
  Ambiguity,     // independent estimates disagree beyond tolerance
  Inconclusive,  // extrapolation did not settle
  Degenerate,    // trivially degenerate configuration (e.g. stagnant base orbit)
  Parse,         // malformed source text
  Io             // file / format problem
};

const char* error_code(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* code() const { return error_code(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace koenigs
