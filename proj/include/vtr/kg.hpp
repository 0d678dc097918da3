#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vtr/chunker.hpp"
#include "vtr/types.hpp"

namespace vtr {

struct EnrichmentConfig {
  uint32_t max_facts = 10;  // 0 disables enrichment entirely (ablation)

  std::string config_hash() const;
};

/// Per-video triple set with a surface-form index over subjects and
/// objects. Triples keep source (file) order; exact duplicates are dropped
/// at load. Immutable once built.
class TripleStore {
 public:
  struct SurfaceRef {
    uint32_t triple_index;
    bool as_subject;
  };

  /// Adds a triple for a video. Fields must already be NFKC-normalized and
  /// trimmed; exact duplicates within the video are ignored.
  void add_triple(const std::string& video_id, KGTriple triple);

  /// Registers a video with no triples (so lookups distinguish "video with
  /// empty K" from "unknown video").
  void add_video(const std::string& video_id);

  bool has_video(const std::string& video_id) const;

  /// Triples of one video in source order. Throws UnknownVideo.
  const std::vector<KGTriple>& triples_for(const std::string& video_id) const;

  /// Casefolded surface forms of one video, longest first (ties broken
  /// lexicographically). Empty for unknown videos.
  const std::vector<std::string>& surfaces_for(const std::string& video_id) const;

  /// Triple references for one casefolded surface form of one video.
  const std::vector<SurfaceRef>& refs_for(const std::string& video_id,
                                          const std::string& surface) const;

  size_t video_count() const { return videos_.size(); }
  size_t triple_count(const std::string& video_id) const;

 private:
  struct VideoEntry {
    std::vector<KGTriple> triples;
    std::map<std::string, std::vector<SurfaceRef>> surface_refs;
    std::vector<std::string> surfaces_by_length;  // rebuilt lazily on add
  };
  std::map<std::string, VideoEntry> videos_;

  static bool surface_order(const std::string& a, const std::string& b);
};

/// A chunk with rendered KG facts appended. enriched_text always starts
/// with base.text verbatim; facts are deduplicated and capped.
struct EnrichedChunk {
  Chunk base;
  std::vector<std::string> entities;  // matched casefolded surfaces, first-occurrence order
  std::vector<std::string> facts;     // rendered sentences, deduped, capped
  std::string enriched_text;
  EmbeddingVector embedding;  // set by embed_chunks
};

/// Greedy longest-match scan of the chunk text against the subject/object
/// surface forms of the chunk's video. Case-insensitive via NFKC_Casefold;
/// surfaces without CJK characters must fall on word boundaries, CJK
/// surfaces match any substring. Results in first-occurrence order.
std::vector<std::string> match_entities(const Chunk& chunk, const TripleStore& store);

/// All triples of the video where the entity appears as subject or object
/// (casefolded comparison), in source order. Throws UnknownVideo.
std::vector<KGTriple> retrieve_triples(const std::string& entity, const std::string& video_id,
                                       const TripleStore& store);

/// Renders a triple as "{subject} {relation} {object}." with relation
/// underscores as spaces, plus "{x} is a {type}." sentences for any types.
std::string render_fact(const KGTriple& triple);

/// Appends up to max_facts rendered fact sentences to the chunk text.
/// With max_facts == 0 the module is bypassed: no matching is performed
/// and enriched_text equals chunk.text exactly.
EnrichedChunk enrich_chunk(const Chunk& chunk, const TripleStore& store,
                           const EnrichmentConfig& config);

}  // namespace vtr
