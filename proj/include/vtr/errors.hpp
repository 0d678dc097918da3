#pragma once

#include <stdexcept>
#include <string>

namespace vtr {

// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define VTR_DEFINE_ERROR(NAME)                                 \
  class NAME : public Error {                                  \
   public:                                                     \
    explicit NAME(const std::string& msg) : Error(msg) {}      \
  }

// vector math
VTR_DEFINE_ERROR(DimensionMismatch);
VTR_DEFINE_ERROR(BothZeroVectors);
VTR_DEFINE_ERROR(EmptySet);

// subtitle parsing / corpus loading
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, size_t line_no)
      : Error(msg + " (line " + std::to_string(line_no) + ")"), line_no_(line_no) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_no_(0) {}
  size_t line_no() const { return line_no_; }

 private:
  size_t line_no_;
};

class MalformedTimestamp : public ParseError {
 public:
  using ParseError::ParseError;
};
class EmptyFile : public ParseError {
 public:
  using ParseError::ParseError;
};
class MissingHeader : public ParseError {
 public:
  using ParseError::ParseError;
};

VTR_DEFINE_ERROR(DuplicateVideoId);
VTR_DEFINE_ERROR(CorpusLoadError);

// embedding providers
VTR_DEFINE_ERROR(RemoteUnavailable);
VTR_DEFINE_ERROR(MissingVector);

// chunking
VTR_DEFINE_ERROR(EmptyVideo);
VTR_DEFINE_ERROR(TooFewLines);

// knowledge graph
VTR_DEFINE_ERROR(UnknownVideo);

// index construction / persistence
VTR_DEFINE_ERROR(KTooLarge);
VTR_DEFINE_ERROR(EmptyMemberSet);
VTR_DEFINE_ERROR(NoChunks);
VTR_DEFINE_ERROR(ManifestMismatch);
VTR_DEFINE_ERROR(CorruptFile);

// search
VTR_DEFINE_ERROR(EmptyQuery);

// aggregation
VTR_DEFINE_ERROR(UnknownVideoId);

// evaluation
VTR_DEFINE_ERROR(EmptyRankList);
VTR_DEFINE_ERROR(MissingQuery);
VTR_DEFINE_ERROR(DuplicateVideoInList);

// configuration
VTR_DEFINE_ERROR(ConfigError);

#undef VTR_DEFINE_ERROR

}  // namespace vtr
