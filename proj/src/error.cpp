#include "mteval/error.hpp"

namespace mteval {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Duplicate: return "Duplicate";
    case ErrorCode::NoSuchOrigin: return "NoSuchOrigin";
    case ErrorCode::MissingOriginTags: return "MissingOriginTags";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::DegenerateCorpus: return "DegenerateCorpus";
    case ErrorCode::TooFewMembers: return "TooFewMembers";
    case ErrorCode::MissingRating: return "MissingRating";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::TooFewSystems: return "TooFewSystems";
    case ErrorCode::ZeroLinks: return "ZeroLinks";
    case ErrorCode::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

}  // namespace mteval
