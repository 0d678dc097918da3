#include "vtr/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vtr/errors.hpp"
#include "vtr/subtitle_parse.hpp"
#include "vtr/text_normalize.hpp"

namespace fs = std::filesystem;

namespace vtr {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key \"" + key + "\" in " + context);
    }
  }
}

}  // namespace

CorpusManifest CorpusManifest::load(const std::string& manifest_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw CorpusLoadError("invalid corpus manifest " + manifest_path + ": " + e.what());
  }
  reject_unknown_keys(doc, {"videos", "kg_path"}, "corpus manifest");
  CorpusManifest manifest;
  manifest.base_dir = fs::path(manifest_path).parent_path().string();
  if (!doc.contains("videos") || !doc["videos"].is_array()) {
    throw CorpusLoadError("corpus manifest needs a \"videos\" array: " + manifest_path);
  }
  for (const auto& entry : doc["videos"]) {
    reject_unknown_keys(entry, {"video_id", "subtitle_path", "language"},
                        "corpus manifest video entry");
    CorpusManifest::VideoEntry v;
    v.video_id = entry.at("video_id").get<std::string>();
    v.subtitle_path = entry.at("subtitle_path").get<std::string>();
    v.language = entry.value("language", "");
    manifest.videos.push_back(std::move(v));
  }
  manifest.kg_path = doc.value("kg_path", "");
  return manifest;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (fs::path(base_dir) / p).string();
}

std::vector<SubtitleLine> parse_by_extension(const std::string& path,
                                             const std::string& bytes) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".srt") return parse_srt(bytes);
  if (ext == ".vtt") return parse_vtt(bytes);
  if (ext == ".jsonl") return parse_jsonl(bytes);
  throw ParseError("unsupported subtitle extension: " + ext);
}

// Cleaning pass: clean each cue, drop empties, merge sub-2-character
// fragments into the following line, re-index contiguously.
std::vector<SubtitleLine> clean_track(std::vector<SubtitleLine> raw) {
  std::vector<SubtitleLine> cleaned;
  for (auto& line : raw) {
    line.text = clean_text(line.text);
    if (line.text.empty()) continue;
    cleaned.push_back(std::move(line));
  }
  std::vector<SubtitleLine> merged;
  std::string carry;
  uint64_t carry_start = 0;
  for (auto& line : cleaned) {
    if (!carry.empty()) {
      line.text = carry + " " + line.text;
      line.start_ms = carry_start;
      carry.clear();
    }
    if (codepoint_length(line.text) < 2) {
      carry = line.text;
      carry_start = line.start_ms;
      continue;
    }
    merged.push_back(std::move(line));
  }
  if (!carry.empty()) {
    // A trailing short fragment has no following line; keep it.
    SubtitleLine tail;
    tail.text = carry;
    tail.start_ms = carry_start;
    tail.end_ms = carry_start;
    if (!merged.empty()) tail.end_ms = std::max(carry_start, merged.back().end_ms);
    merged.push_back(std::move(tail));
  }
  for (size_t i = 0; i < merged.size(); ++i) merged[i].index = static_cast<uint32_t>(i);
  return merged;
}

}  // namespace

void load_triples_tsv(const std::string& path, const std::vector<std::string>& known_videos,
                      TripleStore* store, std::vector<std::string>* warnings) {
  std::set<std::string> known(known_videos.begin(), known_videos.end());
  std::istringstream in(read_file(path));
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, '\t')) fields.push_back(field);
    if (fields.size() < 4 || fields.size() > 6) {
      throw ParseError("KG row needs 4-6 tab-separated fields in " + path, line_no);
    }
    for (auto& f : fields) {
      f = clean_text(f);  // NFKC + trim; triples share the corpus text form
    }
    KGTriple triple;
    triple.subject = fields[1];
    triple.relation = fields[2];
    triple.object = fields[3];
    if (fields.size() > 4) triple.subject_type = fields[4];
    if (fields.size() > 5) triple.object_type = fields[5];
    if (triple.subject.empty() || triple.relation.empty() || triple.object.empty()) {
      throw ParseError("KG row has empty subject/relation/object after normalization in " +
                           path,
                       line_no);
    }
    const std::string& video_id = fields[0];
    if (!known.count(video_id)) {
      if (warnings != nullptr) {
        warnings->push_back("kg row " + std::to_string(line_no) + " references unknown video " +
                            video_id + "; skipped");
      }
      continue;
    }
    store->add_triple(video_id, std::move(triple));
  }
}

Corpus load_corpus(const CorpusManifest& manifest) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  for (const auto& entry : manifest.videos) {
    if (!seen_ids.insert(entry.video_id).second) {
      throw DuplicateVideoId("duplicate video_id in manifest: " + entry.video_id);
    }
  }

  std::vector<std::string> errors;
  for (const auto& entry : manifest.videos) {
    const std::string path = resolve(manifest.base_dir, entry.subtitle_path);
    VideoRecord video;
    video.video_id = entry.video_id;
    video.language = entry.language;
    try {
      video.lines = clean_track(parse_by_extension(path, read_file(path)));
    } catch (const Error& e) {
      errors.push_back(path + ": " + e.what());
      continue;
    }
    if (video.lines.empty()) {
      corpus.warnings.push_back("video " + entry.video_id +
                                " has no usable lines after cleaning");
    }
    uint64_t prev_start = 0;
    for (const auto& line : video.lines) {
      if (line.start_ms < prev_start) {
        corpus.warnings.push_back("video " + entry.video_id +
                                  " has non-monotonic start_ms at line " +
                                  std::to_string(line.index));
        break;
      }
      prev_start = line.start_ms;
    }
    corpus.videos.push_back(std::move(video));
  }
  if (!errors.empty()) {
    std::string joined = "corpus load failed for " + std::to_string(errors.size()) + " file(s):";
    for (const auto& e : errors) joined += "\n  " + e;
    throw CorpusLoadError(joined);
  }

  std::vector<std::string> ids;
  for (const auto& v : corpus.videos) {
    ids.push_back(v.video_id);
    corpus.triples.add_video(v.video_id);
  }
  if (!manifest.kg_path.empty()) {
    load_triples_tsv(resolve(manifest.base_dir, manifest.kg_path), ids, &corpus.triples,
                     &corpus.warnings);
  }
  return corpus;
}

Corpus load_corpus_dir(const std::string& corpus_dir) {
  return load_corpus(CorpusManifest::load((fs::path(corpus_dir) / "manifest.json").string()));
}

}  // namespace vtr
