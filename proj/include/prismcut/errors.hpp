#pragma once

#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>

namespace prismcut {

enum class ErrorCode {
  EmptyMesh,
  InvalidSegment,
  AlignmentFailed,
  MalformedFile,
  BadRotation,
  DuplicateCamera,
  BadFootprint,
  IoError,
  EmptySlice,
  EmptyInput,
  ShapeMismatch,
  BadConfig,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Non-fatal conditions (degenerate visibility, dropped outlines, ...) go
// through here instead of throwing.
inline void log_warn(const std::string& msg) {
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  std::cerr << "[prismcut] warning: " << msg << "\n";
}

}  // namespace prismcut
