#include "vtr/chunker.hpp"

#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/vector_math.hpp"

namespace vtr {

void ChunkerConfig::validate() const {
  // The acceptance grid sweeps tau over the closed interval; +-1 select
  // the single-chunk and identical-run extremes.
  if (tau < -1.0f || tau > 1.0f) throw ConfigError("chunker tau must be in [-1, 1]");
  if (max_chunk_lines == 0) throw ConfigError("max_chunk_lines must be positive");
  if (min_chunk_lines == 0) throw ConfigError("min_chunk_lines must be positive");
  if (min_chunk_lines > max_chunk_lines) {
    throw ConfigError("min_chunk_lines must not exceed max_chunk_lines");
  }
}

std::string ChunkerConfig::config_hash() const {
  nlohmann::json j{{"tau", tau},
                   {"max_chunk_lines", max_chunk_lines},
                   {"min_chunk_lines", min_chunk_lines}};
  return sha256_hex(j.dump());
}

namespace {

std::vector<EmbeddingVector> embed_lines(const VideoRecord& video, Embedder& embedder) {
  std::vector<std::string> texts;
  texts.reserve(video.lines.size());
  for (const auto& line : video.lines) texts.push_back(line.text);
  return embedder.embed_batch(texts);
}

std::vector<double> adjacent_similarities(const std::vector<EmbeddingVector>& vecs) {
  std::vector<double> sims;
  sims.reserve(vecs.size() > 0 ? vecs.size() - 1 : 0);
  for (size_t k = 0; k + 1 < vecs.size(); ++k) {
    sims.push_back(cosine_similarity_or_zero(vecs[k], vecs[k + 1]));
  }
  return sims;
}

}  // namespace

std::vector<Chunk> chunk_video(const VideoRecord& video, Embedder& embedder,
                               const ChunkerConfig& config) {
  config.validate();
  if (video.lines.empty()) throw EmptyVideo("video has no lines: " + video.video_id);

  const size_t m = video.lines.size();
  std::vector<double> sims;
  if (m > 1) sims = adjacent_similarities(embed_lines(video, embedder));

  std::vector<Chunk> chunks;
  size_t chunk_start = 0;
  auto flush = [&](size_t last) {
    Chunk c;
    c.video_id = video.video_id;
    c.language = video.language;
    c.chunk_id = static_cast<uint32_t>(chunks.size());
    c.first_line = static_cast<uint32_t>(chunk_start);
    c.last_line = static_cast<uint32_t>(last);
    for (size_t i = chunk_start; i <= last; ++i) {
      if (!c.text.empty()) c.text.push_back(' ');
      c.text += video.lines[i].text;
    }
    chunks.push_back(std::move(c));
    chunk_start = last + 1;
  };

  for (size_t k = 0; k + 1 < m; ++k) {
    const size_t chunk_len = k - chunk_start + 1;
    if (chunk_len >= config.max_chunk_lines) {
      flush(k);
      continue;
    }
    if (sims[k] < static_cast<double>(config.tau) && chunk_len >= config.min_chunk_lines) {
      flush(k);
    }
  }
  flush(m - 1);
  return chunks;
}

std::vector<double> similarity_profile(const VideoRecord& video, Embedder& embedder) {
  if (video.lines.size() < 2) {
    throw TooFewLines("similarity profile needs at least 2 lines, video " + video.video_id +
                      " has " + std::to_string(video.lines.size()));
  }
  return adjacent_similarities(embed_lines(video, embedder));
}

}  // namespace vtr
