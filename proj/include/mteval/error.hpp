#pragma once

#include <stdexcept>
#include <string>

namespace mteval {

enum class ErrorCode {
  MissingFile,
  InvalidEncoding,
  EmptyFile,
  MalformedRow,
  OutOfRange,
  Duplicate,
  NoSuchOrigin,
  MissingOriginTags,
  EmptyResult,
  LengthMismatch,
  EmptyReference,
  DegenerateCorpus,
  TooFewMembers,
  MissingRating,
  ConstantVector,
  TooFewSystems,
  ZeroLinks,
  BadArgument,
};

const char* to_string(ErrorCode code);

// All loader and computation failures are reported through this type so
// callers can branch on the code instead of parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mteval
