#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vtr/chunker.hpp"
#include "vtr/corpus.hpp"
#include "vtr/embedder.hpp"
#include "vtr/index.hpp"
#include "vtr/kg.hpp"
#include "vtr/metrics.hpp"
#include "vtr/rerank.hpp"
#include "vtr/search.hpp"

namespace vtr {

// Everything one run needs, merged from a JSON config file (each component
// under its own key) with unknown keys rejected.
struct RunConfig {
  EmbedderConfig embedder;
  ChunkerConfig chunker;
  EnrichmentConfig enrichment;
  IndexConfig index;
  SearchConfig search;
  RerankerConfig rerank;

  static RunConfig load(const std::string& path);
  void validate() const;

  // One hash per component; ablation runs must differ in exactly one.
  std::map<std::string, std::string> config_hashes() const;
};

struct BuildSummary {
  std::string video_id;
  uint32_t chunk_count = 0;
  uint32_t node_count = 0;
};

// Full offline pipeline: chunk, enrich, embed and cluster every corpus
// video (in parallel), then persist the index into out_dir.
std::vector<BuildSummary> build_index_dir(const Corpus& corpus, const RunConfig& cfg,
                                          const std::string& out_dir);

// Query-time façade over a persisted index. Construction verifies that the
// configured embedder matches the one the index was built with.
class Engine {
 public:
  Engine(const std::string& index_dir, RunConfig cfg);

  struct QueryOutput {
    std::vector<Candidate> candidates;   // global top-M
    std::vector<uint32_t> ratings;       // aligned with candidates; empty when rerank is off
    std::vector<VideoScore> ranking;     // all videos, best first
    SearchStats search_stats;
    RerankStats rerank_stats;
  };

  QueryOutput run_query(const Query& q);

  struct EvaluateOutput {
    EvaluationReport report;
    SearchStats search_stats;
    RerankStats rerank_stats;
  };

  EvaluateOutput evaluate(const std::vector<Query>& queries, const Qrels& qrels);

  // report.json (fixed 6-decimal metrics) plus a per-query rank TSV next to
  // it (same stem, .tsv extension).
  void write_report(const EvaluateOutput& out, const std::string& report_path) const;

  const CorpusIndex& index() const { return index_; }
  const std::vector<std::string>& video_ids() const { return video_ids_; }
  std::map<std::string, std::string> report_config_hashes() const;

 private:
  RunConfig cfg_;
  CorpusIndex index_;
  std::unique_ptr<Embedder> embedder_;
  std::vector<std::string> video_ids_;  // sorted
};

}  // namespace vtr
