#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vtr {

/// Dense embedding. Providers emit L2-normalized vectors of a fixed
/// dimension d >= 2; the all-zero vector is the sentinel for empty text.
using EmbeddingVector = std::vector<float>;

/// One subtitle cue after parsing. `index` is the 0-based position within
/// its track; timestamps are milliseconds with start_ms <= end_ms.
struct SubtitleLine {
  uint32_t index = 0;
  std::string text;
  uint64_t start_ms = 0;
  uint64_t end_ms = 0;

  bool operator==(const SubtitleLine&) const = default;
};

/// A video with its ordered subtitle track and language tag.
struct VideoRecord {
  std::string video_id;
  std::string language;  // BCP-47-style tag, e.g. "en", "zh-CN"
  std::vector<SubtitleLine> lines;
};

/// A (subject, relation, object) fact, optionally typed. Fields are
/// NFKC-normalized and trimmed at load; subject/relation/object non-empty.
struct KGTriple {
  std::string subject;
  std::string relation;
  std::string object;
  std::string subject_type;  // optional, empty when absent
  std::string object_type;   // optional, empty when absent

  bool operator==(const KGTriple&) const = default;
};

/// A user query in any supported language.
struct Query {
  std::string query_id;
  std::string text;
  std::string language;  // optional
};

}  // namespace vtr
