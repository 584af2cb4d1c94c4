#pragma once

#include <stdexcept>
#include <string>

namespace spinelab {

// Broad classes drive the CLI exit code; the kind string names the exact failure.
enum class ErrorClass { Input, Verification, Resource };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), cls_(cls), kind_(std::move(kind)) {}

  ErrorClass cls() const { return cls_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrorClass cls_;
  std::string kind_;
};

[[noreturn]] inline void fail_input(const std::string& kind, const std::string& detail) {
  throw Error(ErrorClass::Input, kind, detail);
}

[[noreturn]] inline void fail_resource(const std::string& kind, const std::string& detail) {
  throw Error(ErrorClass::Resource, kind, detail);
}

}  // namespace spinelab
