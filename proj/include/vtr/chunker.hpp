#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vtr/embedder.hpp"
#include "vtr/types.hpp"

namespace vtr {

struct ChunkerConfig {
  float tau = 0.55f;             // adjacent-similarity boundary threshold
  uint32_t max_chunk_lines = 30; // hard cap, keeps chunks promptable
  uint32_t min_chunk_lines = 1;  // suppresses tau boundaries below this size

  void validate() const;  // throws ConfigError
  std::string config_hash() const;
};

/// A contiguous run of subtitle lines with high adjacent similarity.
/// line_span is inclusive; text joins member line texts with single spaces.
struct Chunk {
  std::string video_id;
  uint32_t chunk_id = 0;  // 0-based, sequential per video
  uint32_t first_line = 0;
  uint32_t last_line = 0;
  std::string text;
  std::string language;
};

/// Splits a video into chunks. A boundary falls between lines k and k+1
/// when cos(e(l_k), e(l_{k+1})) < tau or the current chunk is already at
/// max_chunk_lines. Zero-sentinel line embeddings compare as similarity 0.
/// Throws EmptyVideo for a video with no lines.
std::vector<Chunk> chunk_video(const VideoRecord& video, Embedder& embedder,
                               const ChunkerConfig& config);

/// Adjacent-line similarity diagnostic: entry k is cos(e(l_k), e(l_{k+1})),
/// length m-1. Throws TooFewLines for m < 2.
std::vector<double> similarity_profile(const VideoRecord& video, Embedder& embedder);

}  // namespace vtr
