#include "vtr/text_normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <cctype>

#include "vtr/errors.hpp"

namespace vtr {

namespace {

const icu::Normalizer2* nfkc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error("ICU NFKC normalizer unavailable");
  }
  return n;
}

const icu::Normalizer2* nfkc_cf_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error("ICU NFKC_Casefold normalizer unavailable");
  }
  return n;
}

std::string normalize_with(const icu::Normalizer2* norm, const std::string& text) {
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(text);
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = norm->normalize(in, status);
  if (U_FAILURE(status)) throw Error("ICU normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

}  // namespace

std::string nfkc(const std::string& text) {
  static const icu::Normalizer2* norm = nfkc_instance();
  return normalize_with(norm, text);
}

std::string nfkc_casefold(const std::string& text) {
  static const icu::Normalizer2* norm = nfkc_cf_instance();
  return normalize_with(norm, text);
}

std::vector<CodePoint> decode_utf8(const std::string& text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t len = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < len) {
    int32_t start = i;
    UChar32 cp;
    U8_NEXT(s, i, len, cp);
    if (cp < 0) cp = 0xFFFD;
    out.push_back({cp, static_cast<size_t>(start)});
  }
  return out;
}

size_t codepoint_length(const std::string& text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t len = static_cast<int32_t>(text.size());
  int32_t i = 0;
  size_t count = 0;
  while (i < len) {
    UChar32 cp;
    U8_NEXT(s, i, len, cp);
    ++count;
  }
  return count;
}

std::string truncate_codepoints(const std::string& text, size_t max_codepoints) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t len = static_cast<int32_t>(text.size());
  int32_t i = 0;
  size_t count = 0;
  while (i < len && count < max_codepoints) {
    UChar32 cp;
    U8_NEXT(s, i, len, cp);
    ++count;
  }
  return text.substr(0, static_cast<size_t>(i));
}

bool is_cjk(int32_t cp) {
  UErrorCode status = U_ZERO_ERROR;
  UScriptCode script = uscript_getScript(cp, &status);
  if (U_FAILURE(status)) return false;
  switch (script) {
    case USCRIPT_HAN:
    case USCRIPT_HIRAGANA:
    case USCRIPT_KATAKANA:
    case USCRIPT_HANGUL:
    case USCRIPT_BOPOMOFO:
      return true;
    default:
      return false;
  }
}

bool is_word_char(int32_t cp) { return u_isalnum(cp) != 0; }

std::string clean_text(const std::string& raw) {
  std::string text = nfkc(raw);

  // Strip <...> tags and [...] markers in one pass. A '<' only opens a tag
  // when followed by a letter or '/', so "a < b" survives. Unclosed opens
  // are kept literal.
  std::string stripped;
  stripped.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '<' && i + 1 < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '/')) {
      size_t close = text.find('>', i + 1);
      if (close != std::string::npos) {
        i = close + 1;
        continue;
      }
    }
    if (c == '[') {
      size_t close = text.find(']', i + 1);
      if (close != std::string::npos) {
        i = close + 1;
        continue;
      }
    }
    stripped.push_back(c);
    ++i;
  }

  // Collapse whitespace runs (any Unicode whitespace) and trim.
  std::string out;
  out.reserve(stripped.size());
  bool pending_space = false;
  for (const CodePoint& p : decode_utf8(stripped)) {
    if (u_isUWhiteSpace(p.cp) || p.cp == '\t' || p.cp == '\r' || p.cp == '\n') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    char buf[U8_MAX_LENGTH];
    int32_t blen = 0;
    UBool err = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), blen, U8_MAX_LENGTH, p.cp, err);
    if (!err) out.append(buf, static_cast<size_t>(blen));
  }
  return out;
}

}  // namespace vtr
