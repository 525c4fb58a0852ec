#pragma once

#include <stdexcept>
#include <string>

namespace cmvscat {

/// Failure categories; the CLI maps each one to an exit code.
enum class ErrorKind {
  invalid_input,  // malformed or out-of-domain arguments
  degenerate,     // a weight or Schur parameter hit the boundary
  io,             // unreadable/unwritable files
  non_canonical,  // inverse problem refused: no unique answer
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cmvscat
