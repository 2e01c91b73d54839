#include "netshrink/error.hpp"

namespace netshrink {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kData: return "data";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kCapability: return "capability";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kData:
    case ErrorKind::kDomain:
    case ErrorKind::kPrecondition:
      return 3;
    case ErrorKind::kCapability:
      return 4;
  }
  return 1;
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace netshrink
