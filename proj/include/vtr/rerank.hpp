#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vtr/search.hpp"
#include "vtr/types.hpp"

namespace vtr {

enum class RerankerKind { None, Mock, Http };

std::string to_string(RerankerKind kind);
RerankerKind reranker_kind_from_string(const std::string& s);

struct RerankerConfig {
  RerankerKind kind = RerankerKind::None;
  std::string endpoint;  // http kind
  std::string prompt_template =
      "Rate the relevance of the passage to the question on a scale of 1 to 3, "
      "where 3 is highly relevant. Answer with a single digit.\n"
      "Question: {query}\nPassage: {chunk}";
  uint32_t max_retries = 2;    // extra attempts after the first failure
  uint32_t fallback_rating = 1;
  double band_low = 0.3;   // mock: cosine below this rates 1
  double band_high = 0.6;  // mock: cosine below this rates 2, else 3
  uint32_t parallelism = 8;    // concurrent in-flight http requests
  uint32_t timeout_ms = 10000;

  void validate() const;
  std::string config_hash() const;
};

struct RerankStats {
  uint64_t ratings_requested = 0;
  uint64_t fallbacks_used = 0;
};

struct VideoScore {
  std::string video_id;
  // Max rating over the video's scored candidates; with re-ranking off, the
  // best candidate cosine instead. Videos with no candidate at all carry
  // their best similarity seen during traversal.
  double score = 0.0;
  double best_cosine = -1.0;
  uint32_t rating_count = 0;
};

// Rates one candidate on the 1-3 scale. The http scorer renders the prompt
// template, posts {"prompt": ...}, and reads the first '1'/'2'/'3' in the
// reply; transport or parse failures retry, then fall back to
// fallback_rating. The mock scorer bands the candidate's cosine.
uint32_t score_chunk(const Query& query, const Candidate& cand, const RerankerConfig& cfg,
                     RerankStats* stats = nullptr);

// Rates every candidate, preserving order. Http scoring runs up to
// cfg.parallelism requests concurrently; results are position-stable.
std::vector<uint32_t> rerank_candidates(const Query& query, const std::vector<Candidate>& cands,
                                        const RerankerConfig& cfg, RerankStats* stats = nullptr);

// Max-pools candidate scores into a full video ranking. Videos holding
// candidates come first (score desc, best_cosine desc, video_id asc); the
// rest follow ordered by best_seen desc then video_id asc, so the output is
// always a permutation of all_video_ids. With kind none, ratings are ignored
// and candidate cosines rank the scored videos.
std::vector<VideoScore> aggregate(const std::vector<Candidate>& cands,
                                  const std::vector<uint32_t>& ratings,
                                  const std::vector<std::string>& all_video_ids,
                                  const std::map<std::string, double>& best_seen,
                                  const RerankerConfig& cfg);

}  // namespace vtr
