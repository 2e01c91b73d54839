#pragma once

#include <stdexcept>
#include <string>

namespace netshrink {

enum class ErrorKind {
  kConfig,        // invalid parameters or configuration documents
  kUsage,         // API misuse, e.g. mismatched grids
  kData,          // unreadable or malformed input files
  kDomain,        // mathematically undefined request (empty graph, tau < 0)
  kPrecondition,  // input violates an algorithm's structural precondition
  kCapability,    // request exceeds what the selected backend supports
};

const char* to_string(ErrorKind kind);

// Process exit code for the CLI: 2 config, 3 data, 4 capability.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace netshrink
