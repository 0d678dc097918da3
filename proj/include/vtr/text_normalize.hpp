#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vtr {

/// Unicode NFKC normalization (UTF-8 in, UTF-8 out).
std::string nfkc(const std::string& text);

/// NFKC_Casefold: NFKC plus full case folding. The canonical form used for
/// entity surface matching.
std::string nfkc_casefold(const std::string& text);

/// A decoded code point and the byte offset where it starts.
struct CodePoint {
  int32_t cp = 0;
  size_t byte_offset = 0;
};

/// Decodes UTF-8 into code points with byte offsets. Invalid sequences
/// decode as U+FFFD and advance one byte.
std::vector<CodePoint> decode_utf8(const std::string& text);

/// Number of code points in a UTF-8 string.
size_t codepoint_length(const std::string& text);

/// Truncates to at most max_codepoints, never splitting a UTF-8 sequence.
std::string truncate_codepoints(const std::string& text, size_t max_codepoints);

/// True for Han, Hiragana, Katakana, Hangul and Bopomofo code points.
/// CJK text carries no spaces, so entity matches inside it need no word
/// boundary.
bool is_cjk(int32_t cp);

/// True for code points that can form part of a word (Unicode alphanumeric).
bool is_word_char(int32_t cp);

/// Subtitle text cleaning, applied once at ingest:
///   1. NFKC normalization
///   2. HTML-ish tags (<i>, </font>, ...) stripped
///   3. bracketed non-speech markers like "[Music]" removed
///   4. whitespace runs collapsed to single spaces, ends trimmed
/// May return an empty string; callers drop empty lines.
std::string clean_text(const std::string& raw);

}  // namespace vtr
