#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vtr/embedder.hpp"
#include "vtr/index.hpp"
#include "vtr/types.hpp"

namespace vtr {

struct SearchConfig {
  double theta = 0.35;  // centroid-similarity pruning threshold
  // Optional per-level override (level 1 first); the last entry extends to
  // deeper levels. Empty means theta applies everywhere.
  std::vector<double> theta_per_level;
  uint32_t top_m = 30;
  bool fallback_best_branch = true;  // level-1 rescue when every coarse node misses theta

  void validate() const;
  std::string config_hash() const;
};

struct Candidate {
  std::string video_id;
  uint32_t chunk_id = 0;
  double cosine = 0.0;  // cos(query, chunk embedding), recomputed at the leaf
  std::string enriched_text;
};

struct SearchStats {
  uint64_t centroid_evals = 0;  // bounded by the node count of the traversed trees
  uint64_t leaves_scored = 0;
};

// Cleans the query text like subtitle lines, then embeds it. Throws
// EmptyQuery when nothing survives cleaning.
EmbeddingVector embed_query(const Query& q, Embedder* embedder);

// Threshold-pruned descent over one video tree. Coarse (level-1) nodes whose
// centroid similarity reaches the level's theta are kept; if none qualify and
// fallback_best_branch is set, only the best coarse node survives (ties to
// the lowest node_id). Deeper levels apply the same threshold with no
// fallback. best_seen, when given, receives the maximum similarity computed
// anywhere in the traversal, including pruned coarse nodes.
std::vector<Candidate> search_tree(const EmbeddingVector& q_vec, const VideoTree& tree,
                                   const SearchConfig& cfg, SearchStats* stats = nullptr,
                                   double* best_seen = nullptr);

struct SearchResult {
  std::vector<Candidate> candidates;        // global top-M, deterministically ordered
  std::map<std::string, double> best_seen;  // every indexed video; -1 when nothing was scored
  SearchStats stats;
};

// Runs search_tree over every video and merges: cosine descending, then
// video_id, then chunk_id ascending; truncated to top_m.
SearchResult search_corpus(const EmbeddingVector& q_vec, const CorpusIndex& index,
                           const SearchConfig& cfg);

}  // namespace vtr
