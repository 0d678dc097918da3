#pragma once

#include <string>
#include <vector>

#include "vtr/kg.hpp"
#include "vtr/types.hpp"

namespace vtr {

/// Corpus directory description, loaded from manifest.json:
///   {"videos": [{"video_id", "subtitle_path", "language"}, ...],
///    "kg_path": "kg.tsv"}            (kg_path optional)
/// Paths are resolved relative to the manifest's directory.
struct CorpusManifest {
  struct VideoEntry {
    std::string video_id;
    std::string subtitle_path;
    std::string language;
  };
  std::vector<VideoEntry> videos;
  std::string kg_path;  // empty when the corpus has no triples file
  std::string base_dir;

  static CorpusManifest load(const std::string& manifest_path);  // throws on unknown keys
};

struct Corpus {
  std::vector<VideoRecord> videos;
  TripleStore triples;
  std::vector<std::string> warnings;
};

/// Loads and cleans every subtitle track (.srt/.vtt/.jsonl by extension)
/// and groups KG triples per video. Lines that clean to empty are dropped;
/// cleaned lines shorter than 2 characters merge into the following line;
/// survivors are re-indexed contiguously. Per-file parse failures are
/// aggregated into one CorpusLoadError naming each file.
Corpus load_corpus(const CorpusManifest& manifest);

/// Convenience: load(manifest.json under corpus_dir) + load_corpus.
Corpus load_corpus_dir(const std::string& corpus_dir);

/// Parses a KG triples TSV: video_id, subject, relation, object and
/// optional subject_type, object_type columns. Rows are NFKC-normalized
/// and trimmed; rows for unknown videos are skipped with a warning.
void load_triples_tsv(const std::string& path, const std::vector<std::string>& known_videos,
                      TripleStore* store, std::vector<std::string>* warnings);

}  // namespace vtr
