#include "vtr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vtr/errors.hpp"

namespace fs = std::filesystem;

namespace vtr {

namespace {

// Wraps one config-file section: field access with type errors reported in
// context, and any key outside the declared set rejected.
class Section {
 public:
  Section(const nlohmann::json& doc, const std::string& name,
          std::initializer_list<const char*> keys)
      : name_(name) {
    if (!doc.contains(name)) return;
    obj_ = &doc.at(name);
    if (!obj_->is_object()) throw ConfigError("config section \"" + name + "\" must be an object");
    for (const auto& [key, value] : obj_->items()) {
      if (std::find_if(keys.begin(), keys.end(),
                       [&](const char* k) { return key == k; }) == keys.end()) {
        throw ConfigError("unknown key \"" + key + "\" in config section \"" + name + "\"");
      }
    }
  }

  template <typename T>
  void get(const char* key, T* out) const {
    if (obj_ == nullptr || !obj_->contains(key)) return;
    try {
      *out = obj_->at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad value for \"" + name_ + "." + key + "\": " + e.what());
    }
  }

  void get_string_kind(const char* key, std::string* out) const { get(key, out); }

 private:
  std::string name_;
  const nlohmann::json* obj_ = nullptr;
};

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  const size_t hw = std::thread::hardware_concurrency();
  const size_t workers = std::max<size_t>(1, std::min<size_t>(hw == 0 ? 4 : hw, count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::vector<std::string> sections{"embedder", "chunker", "enrichment",
                                                   "index",    "search",  "rerank"};
    if (std::find(sections.begin(), sections.end(), key) == sections.end()) {
      throw ConfigError("unknown config section \"" + key + "\"");
    }
  }

  RunConfig cfg;
  {
    Section s(doc, "embedder",
              {"kind", "dimension", "endpoint", "vector_file", "batch_size", "timeout_ms",
               "cache_capacity", "max_attempts"});
    std::string kind = to_string(cfg.embedder.kind);
    s.get("kind", &kind);
    cfg.embedder.kind = embedder_kind_from_string(kind);
    s.get("dimension", &cfg.embedder.dimension);
    s.get("endpoint", &cfg.embedder.endpoint);
    s.get("vector_file", &cfg.embedder.vector_file);
    s.get("batch_size", &cfg.embedder.batch_size);
    s.get("timeout_ms", &cfg.embedder.timeout_ms);
    s.get("cache_capacity", &cfg.embedder.cache_capacity);
    s.get("max_attempts", &cfg.embedder.max_attempts);
  }
  {
    Section s(doc, "chunker", {"tau", "max_chunk_lines", "min_chunk_lines"});
    s.get("tau", &cfg.chunker.tau);
    s.get("max_chunk_lines", &cfg.chunker.max_chunk_lines);
    s.get("min_chunk_lines", &cfg.chunker.min_chunk_lines);
  }
  {
    Section s(doc, "enrichment", {"max_facts"});
    s.get("max_facts", &cfg.enrichment.max_facts);
  }
  {
    Section s(doc, "index",
              {"k_max", "kmeans_max_iters", "kmeans_tol", "rng_seed", "hac_min_leaf_group",
               "flat_mode"});
    s.get("k_max", &cfg.index.k_max);
    s.get("kmeans_max_iters", &cfg.index.kmeans_max_iters);
    s.get("kmeans_tol", &cfg.index.kmeans_tol);
    s.get("rng_seed", &cfg.index.rng_seed);
    s.get("hac_min_leaf_group", &cfg.index.hac_min_leaf_group);
    s.get("flat_mode", &cfg.index.flat_mode);
  }
  {
    Section s(doc, "search", {"theta", "theta_per_level", "top_m", "fallback_best_branch"});
    s.get("theta", &cfg.search.theta);
    s.get("theta_per_level", &cfg.search.theta_per_level);
    s.get("top_m", &cfg.search.top_m);
    s.get("fallback_best_branch", &cfg.search.fallback_best_branch);
  }
  {
    Section s(doc, "rerank",
              {"kind", "endpoint", "prompt_template", "max_retries", "fallback_rating",
               "band_low", "band_high", "parallelism", "timeout_ms"});
    std::string kind = to_string(cfg.rerank.kind);
    s.get("kind", &kind);
    cfg.rerank.kind = reranker_kind_from_string(kind);
    s.get("endpoint", &cfg.rerank.endpoint);
    s.get("prompt_template", &cfg.rerank.prompt_template);
    s.get("max_retries", &cfg.rerank.max_retries);
    s.get("fallback_rating", &cfg.rerank.fallback_rating);
    s.get("band_low", &cfg.rerank.band_low);
    s.get("band_high", &cfg.rerank.band_high);
    s.get("parallelism", &cfg.rerank.parallelism);
    s.get("timeout_ms", &cfg.rerank.timeout_ms);
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  embedder.validate();
  chunker.validate();
  index.validate();
  search.validate();
  rerank.validate();
}

std::map<std::string, std::string> RunConfig::config_hashes() const {
  return {{"embedder", fingerprint_for(embedder).config_hash},
          {"chunker", chunker.config_hash()},
          {"enrichment", enrichment.config_hash()},
          {"index", index.config_hash()},
          {"search", search.config_hash()},
          {"rerank", rerank.config_hash()}};
}

std::vector<BuildSummary> build_index_dir(const Corpus& corpus, const RunConfig& cfg,
                                          const std::string& out_dir) {
  cfg.validate();
  std::unique_ptr<Embedder> embedder = make_embedder(cfg.embedder);

  CorpusIndex index;
  index.fingerprint = embedder->fingerprint();
  index.config_hashes = {{"embedder", index.fingerprint.config_hash},
                         {"chunker", cfg.chunker.config_hash()},
                         {"enrichment", cfg.enrichment.config_hash()},
                         {"index", cfg.index.config_hash()}};
  index.trees.resize(corpus.videos.size());

  std::vector<std::string> errors(corpus.videos.size());
  parallel_for(corpus.videos.size(), [&](size_t i) {
    const VideoRecord& video = corpus.videos[i];
    VideoTree& slot = index.trees[i];
    try {
      if (video.lines.empty()) {
        // 0-chunk videos stay in the index so the final ranking covers them.
        slot.video_id = video.video_id;
        slot.language = video.language;
        return;
      }
      std::vector<Chunk> chunks = chunk_video(video, *embedder, cfg.chunker);
      std::vector<EnrichedChunk> enriched;
      enriched.reserve(chunks.size());
      for (const Chunk& chunk : chunks) {
        enriched.push_back(enrich_chunk(chunk, corpus.triples, cfg.enrichment));
      }
      embed_chunks(&enriched, embedder.get());
      slot = build_tree(video.video_id, video.language, std::move(enriched), cfg.index);
    } catch (const std::exception& e) {
      errors[i] = video.video_id + ": " + e.what();
    }
  });
  std::string failure;
  for (const auto& err : errors) {
    if (!err.empty()) failure += "\n  " + err;
  }
  if (!failure.empty()) throw Error("index build failed for some videos:" + failure);

  std::sort(index.trees.begin(), index.trees.end(),
            [](const VideoTree& a, const VideoTree& b) { return a.video_id < b.video_id; });
  save_index(index, out_dir);

  std::vector<BuildSummary> summaries;
  summaries.reserve(index.trees.size());
  for (const VideoTree& tree : index.trees) {
    summaries.push_back({tree.video_id, static_cast<uint32_t>(tree.chunks.size()),
                         static_cast<uint32_t>(tree.nodes.size())});
  }
  return summaries;
}

Engine::Engine(const std::string& index_dir, RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  embedder_ = make_embedder(cfg_.embedder);
  index_ = load_index(index_dir, embedder_->fingerprint());
  video_ids_.reserve(index_.trees.size());
  for (const VideoTree& tree : index_.trees) video_ids_.push_back(tree.video_id);
}

Engine::QueryOutput Engine::run_query(const Query& q) {
  const EmbeddingVector q_vec = embed_query(q, embedder_.get());
  SearchResult found = search_corpus(q_vec, index_, cfg_.search);

  QueryOutput out;
  out.candidates = std::move(found.candidates);
  out.search_stats = found.stats;
  out.ratings = rerank_candidates(q, out.candidates, cfg_.rerank, &out.rerank_stats);
  out.ranking = aggregate(out.candidates, out.ratings, video_ids_, found.best_seen, cfg_.rerank);
  return out;
}

Engine::EvaluateOutput Engine::evaluate(const std::vector<Query>& queries, const Qrels& qrels) {
  EvaluateOutput out;
  std::vector<std::vector<std::string>> lists(queries.size());
  std::mutex stats_mutex;
  auto run_one = [&](size_t i) {
    QueryOutput q_out = run_query(queries[i]);
    std::vector<std::string>& list = lists[i];
    list.reserve(q_out.ranking.size());
    for (const VideoScore& vs : q_out.ranking) list.push_back(vs.video_id);
    std::lock_guard<std::mutex> lock(stats_mutex);
    out.search_stats.centroid_evals += q_out.search_stats.centroid_evals;
    out.search_stats.leaves_scored += q_out.search_stats.leaves_scored;
    out.rerank_stats.ratings_requested += q_out.rerank_stats.ratings_requested;
    out.rerank_stats.fallbacks_used += q_out.rerank_stats.fallbacks_used;
  };
  if (cfg_.rerank.kind == RerankerKind::Http) {
    // The re-ranker already fans out per candidate; keep queries sequential
    // so in-flight requests stay bounded by its parallelism setting.
    for (size_t i = 0; i < queries.size(); ++i) run_one(i);
  } else {
    parallel_for(queries.size(), run_one);
  }

  std::map<std::string, std::vector<std::string>> ranked;
  for (size_t i = 0; i < queries.size(); ++i) ranked[queries[i].query_id] = std::move(lists[i]);
  out.report = evaluate_run(ranked, qrels);
  return out;
}

std::map<std::string, std::string> Engine::report_config_hashes() const {
  std::map<std::string, std::string> hashes = index_.config_hashes;
  hashes["search"] = cfg_.search.config_hash();
  hashes["rerank"] = cfg_.rerank.config_hash();
  return hashes;
}

void Engine::write_report(const EvaluateOutput& out, const std::string& report_path) const {
  const EvaluationReport& r = out.report;
  nlohmann::json stats{{"centroid_evals", out.search_stats.centroid_evals},
                       {"leaves_scored", out.search_stats.leaves_scored},
                       {"ratings_requested", out.rerank_stats.ratings_requested},
                       {"fallbacks_used", out.rerank_stats.fallbacks_used}};
  std::ostringstream j;
  j << "{\n";
  j << "  \"config_hashes\": " << nlohmann::json(report_config_hashes()).dump() << ",\n";
  j << "  \"metrics\": {\"mrr\": " << fixed6(r.mrr) << ", \"overall\": " << fixed6(r.overall)
    << ", \"r_at_1\": " << fixed6(r.r_at.at(1)) << ", \"r_at_10\": " << fixed6(r.r_at.at(10))
    << ", \"r_at_50\": " << fixed6(r.r_at.at(50)) << "},\n";
  j << "  \"num_queries\": " << r.per_query_rank.size() << ",\n";
  j << "  \"num_videos\": " << video_ids_.size() << ",\n";
  j << "  \"per_query_rank\": " << nlohmann::json(r.per_query_rank).dump() << ",\n";
  j << "  \"stats\": " << stats.dump() << "\n";
  j << "}\n";

  std::ofstream report_out(report_path, std::ios::binary | std::ios::trunc);
  if (!report_out) throw Error("cannot write report file: " + report_path);
  report_out << j.str();
  report_out.close();

  fs::path tsv_path(report_path);
  tsv_path.replace_extension(".tsv");
  std::ofstream tsv_out(tsv_path, std::ios::binary | std::ios::trunc);
  if (!tsv_out) throw Error("cannot write per-query rank file: " + tsv_path.string());
  tsv_out << per_query_tsv(r);
}

}  // namespace vtr
