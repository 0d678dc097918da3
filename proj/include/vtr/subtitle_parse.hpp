#pragma once

#include <string>
#include <vector>

#include "vtr/types.hpp"

namespace vtr {

/// Parses SRT content (UTF-8, BOM tolerated). Cue order is preserved and
/// cues are re-indexed 0-based; multi-line cue text is joined with single
/// spaces. Throws MalformedTimestamp (with line number) or EmptyFile.
std::vector<SubtitleLine> parse_srt(const std::string& bytes);

/// Parses WebVTT content. Requires the WEBVTT header; NOTE/STYLE/REGION
/// blocks are skipped. Same output contract as parse_srt. Throws
/// MissingHeader, MalformedTimestamp or EmptyFile.
std::vector<SubtitleLine> parse_vtt(const std::string& bytes);

/// Parses JSON-lines subtitles: one object per line with fields
/// index, start_ms, end_ms, text (video_id tolerated and ignored).
std::vector<SubtitleLine> parse_jsonl(const std::string& bytes);

/// Serializes a track back to SRT (1-based cue numbers, comma decimals).
std::string write_srt(const std::vector<SubtitleLine>& lines);

}  // namespace vtr
