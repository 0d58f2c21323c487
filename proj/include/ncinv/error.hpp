#pragma once

#include <stdexcept>
#include <string>

namespace ncinv {

enum class ErrorCode {
  MixedRingKinds,
  NotInvertible,
  SamplingExhausted,
  BadDimension,
  BlockSingular,
  BadInput,
  RegimeViolation,
  ParseError,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// The subject names the element or subexpression that failed to invert,
// e.g. "a - b d^-1 c" or "Delta".
class NotInvertible : public Error {
 public:
  explicit NotInvertible(std::string subject)
      : Error(ErrorCode::NotInvertible, "not invertible: " + subject),
        subject_(std::move(subject)) {}

  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

class MixedRingKinds : public Error {
 public:
  MixedRingKinds(const std::string& lhs, const std::string& rhs)
      : Error(ErrorCode::MixedRingKinds,
              "mixed ring kinds: " + lhs + " vs " + rhs) {}
};

class BlockSingular : public Error {
 public:
  BlockSingular(int depth, std::string path)
      : Error(ErrorCode::BlockSingular,
              "block singular at depth " + std::to_string(depth) +
                  " (quadrant path '" + path + "')"),
        depth_(depth),
        path_(std::move(path)) {}

  int depth() const noexcept { return depth_; }
  const std::string& path() const noexcept { return path_; }

 private:
  int depth_;
  std::string path_;
};

}  // namespace ncinv
