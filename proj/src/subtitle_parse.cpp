#include "vtr/subtitle_parse.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "vtr/errors.hpp"

namespace vtr {

namespace {

std::string strip_bom(const std::string& bytes) {
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
      static_cast<unsigned char>(bytes[1]) == 0xBB &&
      static_cast<unsigned char>(bytes[2]) == 0xBF) {
    return bytes.substr(3);
  }
  return bytes;
}

std::vector<std::string> split_lines(const std::string& bytes) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : bytes) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty() && current.back() == '\r') current.pop_back();
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::string trim_ascii(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Accepts "HH:MM:SS,mmm", "HH:MM:SS.mmm" and the short "MM:SS.mmm" form.
// Fraction digits are decimal (".5" == 500 ms).
bool parse_timestamp(const std::string& token, uint64_t* out_ms) {
  std::vector<std::string> groups;
  std::string current;
  for (char c : token) {
    if (c == ':') {
      groups.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  groups.push_back(current);
  if (groups.size() != 2 && groups.size() != 3) return false;

  std::string seconds_part = groups.back();
  groups.pop_back();
  size_t sep = seconds_part.find_first_of(",.");
  std::string sec_str = sep == std::string::npos ? seconds_part : seconds_part.substr(0, sep);
  std::string frac_str = sep == std::string::npos ? "0" : seconds_part.substr(sep + 1);
  if (!all_digits(sec_str) || !all_digits(frac_str) || frac_str.size() > 3) return false;
  for (const auto& g : groups) {
    if (!all_digits(g) || g.size() > 5) return false;
  }

  uint64_t hours = 0, minutes = 0;
  if (groups.size() == 2) {
    hours = std::stoull(groups[0]);
    minutes = std::stoull(groups[1]);
  } else {
    minutes = std::stoull(groups[0]);
  }
  uint64_t seconds = std::stoull(sec_str);
  if (minutes > 59 || seconds > 59) return false;
  while (frac_str.size() < 3) frac_str.push_back('0');
  uint64_t millis = std::stoull(frac_str);

  *out_ms = ((hours * 60 + minutes) * 60 + seconds) * 1000 + millis;
  return true;
}

// Parses "start --> end [settings]"; settings are ignored.
void parse_cue_timing(const std::string& line, size_t line_no, uint64_t* start_ms,
                      uint64_t* end_ms) {
  size_t arrow = line.find("-->");
  if (arrow == std::string::npos) {
    throw MalformedTimestamp("missing '-->' in cue timing", line_no);
  }
  std::string left = trim_ascii(line.substr(0, arrow));
  std::string right = trim_ascii(line.substr(arrow + 3));
  size_t space = right.find_first_of(" \t");
  if (space != std::string::npos) right = right.substr(0, space);
  if (!parse_timestamp(left, start_ms) || !parse_timestamp(right, end_ms)) {
    throw MalformedTimestamp("unparseable cue timestamp: " + left + " --> " + right, line_no);
  }
  if (*start_ms > *end_ms) {
    throw MalformedTimestamp("cue start after end", line_no);
  }
}

std::string join_text(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

}  // namespace

std::vector<SubtitleLine> parse_srt(const std::string& bytes) {
  std::vector<std::string> lines = split_lines(strip_bom(bytes));
  std::vector<SubtitleLine> out;
  size_t i = 0;
  while (i < lines.size()) {
    if (trim_ascii(lines[i]).empty()) {
      ++i;
      continue;
    }
    // Optional numeric cue counter before the timing line. Skipped whenever
    // another line follows, so a malformed timing line is reported at its
    // own line number rather than at the counter.
    if (all_digits(trim_ascii(lines[i])) && i + 1 < lines.size() &&
        !trim_ascii(lines[i + 1]).empty()) {
      ++i;
    }
    if (lines[i].find("-->") == std::string::npos) {
      throw MalformedTimestamp("expected cue timing line, got: " + lines[i], i + 1);
    }
    SubtitleLine cue;
    parse_cue_timing(lines[i], i + 1, &cue.start_ms, &cue.end_ms);
    ++i;
    std::vector<std::string> text;
    while (i < lines.size() && !trim_ascii(lines[i]).empty()) {
      text.push_back(trim_ascii(lines[i]));
      ++i;
    }
    cue.text = join_text(text);
    cue.index = static_cast<uint32_t>(out.size());
    out.push_back(std::move(cue));
  }
  if (out.empty()) throw EmptyFile("no cues found in SRT content");
  return out;
}

std::vector<SubtitleLine> parse_vtt(const std::string& bytes) {
  std::vector<std::string> lines = split_lines(strip_bom(bytes));
  if (lines.empty() || lines[0].rfind("WEBVTT", 0) != 0 ||
      (lines[0].size() > 6 && lines[0][6] != ' ' && lines[0][6] != '\t')) {
    throw MissingHeader("WebVTT content must begin with a WEBVTT header", 1);
  }
  std::vector<SubtitleLine> out;
  size_t i = 1;
  // Skip remaining header metadata up to the first blank line.
  while (i < lines.size() && !trim_ascii(lines[i]).empty()) ++i;

  while (i < lines.size()) {
    if (trim_ascii(lines[i]).empty()) {
      ++i;
      continue;
    }
    std::string first = trim_ascii(lines[i]);
    if (first.rfind("NOTE", 0) == 0 || first.rfind("STYLE", 0) == 0 ||
        first.rfind("REGION", 0) == 0) {
      while (i < lines.size() && !trim_ascii(lines[i]).empty()) ++i;
      continue;
    }
    // Optional cue identifier line before the timing line.
    if (lines[i].find("-->") == std::string::npos) {
      if (i + 1 < lines.size() && lines[i + 1].find("-->") != std::string::npos) {
        ++i;
      } else {
        throw MalformedTimestamp("expected cue timing line, got: " + lines[i], i + 1);
      }
    }
    SubtitleLine cue;
    parse_cue_timing(lines[i], i + 1, &cue.start_ms, &cue.end_ms);
    ++i;
    std::vector<std::string> text;
    while (i < lines.size() && !trim_ascii(lines[i]).empty()) {
      text.push_back(trim_ascii(lines[i]));
      ++i;
    }
    cue.text = join_text(text);
    cue.index = static_cast<uint32_t>(out.size());
    out.push_back(std::move(cue));
  }
  if (out.empty()) throw EmptyFile("no cues found in WebVTT content");
  return out;
}

std::vector<SubtitleLine> parse_jsonl(const std::string& bytes) {
  std::vector<std::string> lines = split_lines(strip_bom(bytes));
  std::vector<SubtitleLine> out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (trim_ascii(lines[i]).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON object: ") + e.what(), i + 1);
    }
    if (!obj.is_object() || !obj.contains("index") || !obj.contains("start_ms") ||
        !obj.contains("end_ms") || !obj.contains("text")) {
      throw ParseError("JSONL cue must have index, start_ms, end_ms, text", i + 1);
    }
    SubtitleLine cue;
    cue.start_ms = obj.at("start_ms").get<uint64_t>();
    cue.end_ms = obj.at("end_ms").get<uint64_t>();
    cue.text = obj.at("text").get<std::string>();
    if (cue.start_ms > cue.end_ms) throw MalformedTimestamp("cue start after end", i + 1);
    cue.index = static_cast<uint32_t>(out.size());
    out.push_back(std::move(cue));
  }
  if (out.empty()) throw EmptyFile("no cues found in JSONL content");
  return out;
}

static std::string format_srt_timestamp(uint64_t ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02llu:%02llu:%02llu,%03llu",
                static_cast<unsigned long long>(ms / 3600000),
                static_cast<unsigned long long>((ms / 60000) % 60),
                static_cast<unsigned long long>((ms / 1000) % 60),
                static_cast<unsigned long long>(ms % 1000));
  return buf;
}

std::string write_srt(const std::vector<SubtitleLine>& lines) {
  std::ostringstream out;
  for (size_t i = 0; i < lines.size(); ++i) {
    out << (i + 1) << "\n"
        << format_srt_timestamp(lines[i].start_ms) << " --> "
        << format_srt_timestamp(lines[i].end_ms) << "\n"
        << lines[i].text << "\n\n";
  }
  return out.str();
}

}  // namespace vtr
