#include "vtr/search.hpp"

#include <algorithm>

#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/text_normalize.hpp"
#include "vtr/vector_math.hpp"

namespace vtr {

void SearchConfig::validate() const {
  if (theta < -1.0 || theta > 1.0) throw ConfigError("theta must be in [-1, 1]");
  for (double t : theta_per_level) {
    if (t < -1.0 || t > 1.0) throw ConfigError("theta_per_level entries must be in [-1, 1]");
  }
  if (top_m < 1) throw ConfigError("top_m must be >= 1");
}

std::string SearchConfig::config_hash() const {
  nlohmann::json j{{"theta", theta},
                   {"theta_per_level", theta_per_level},
                   {"top_m", top_m},
                   {"fallback_best_branch", fallback_best_branch}};
  return sha256_hex(j.dump());
}

EmbeddingVector embed_query(const Query& q, Embedder* embedder) {
  const std::string cleaned = clean_text(q.text);
  if (cleaned.empty()) {
    throw EmptyQuery("query \"" + q.query_id + "\" is empty after cleaning");
  }
  return embedder->embed_batch({cleaned})[0];
}

namespace {

double theta_for(const SearchConfig& cfg, size_t level) {
  if (cfg.theta_per_level.empty()) return cfg.theta;
  const size_t idx = std::min(level - 1, cfg.theta_per_level.size() - 1);
  return cfg.theta_per_level[idx];
}

struct Traversal {
  const EmbeddingVector& q_vec;
  const VideoTree& tree;
  const SearchConfig& cfg;
  std::vector<Candidate>* out;
  SearchStats* stats;
  double best_seen = -1.0;

  double centroid_sim(const TreeNode& node) {
    if (node.centroid.size() != q_vec.size()) {
      throw DimensionMismatch("query dimension " + std::to_string(q_vec.size()) +
                              " does not match tree dimension " +
                              std::to_string(node.centroid.size()));
    }
    if (stats != nullptr) ++stats->centroid_evals;
    const double sim = cosine_similarity_or_zero(q_vec, node.centroid);
    best_seen = std::max(best_seen, sim);
    return sim;
  }

  void emit_leaf(const TreeNode& leaf) {
    const EnrichedChunk& chunk = tree.chunks[*leaf.leaf_chunk];
    // Leaf scores come from the chunk's own embedding, never from an
    // ancestor centroid.
    const double sim = cosine_similarity_or_zero(q_vec, chunk.embedding);
    if (stats != nullptr) ++stats->leaves_scored;
    best_seen = std::max(best_seen, sim);
    out->push_back(Candidate{tree.video_id, *leaf.leaf_chunk, sim, chunk.enriched_text});
  }

  void descend(const TreeNode& node, size_t child_level) {
    const double theta = theta_for(cfg, child_level);
    for (uint32_t child_id : node.children) {
      const TreeNode& child = tree.nodes[child_id];
      if (centroid_sim(child) < theta) continue;
      if (child.leaf_chunk.has_value()) {
        emit_leaf(child);
      } else {
        descend(child, child_level + 1);
      }
    }
  }

  void run() {
    const double theta = theta_for(cfg, 1);
    std::vector<std::pair<uint32_t, double>> coarse;
    coarse.reserve(tree.root_children.size());
    for (uint32_t id : tree.root_children) {
      coarse.emplace_back(id, centroid_sim(tree.nodes[id]));
    }
    std::vector<uint32_t> retained;
    for (const auto& [id, sim] : coarse) {
      if (sim >= theta) retained.push_back(id);
    }
    if (retained.empty() && cfg.fallback_best_branch && !coarse.empty()) {
      uint32_t best_id = coarse[0].first;
      double best = coarse[0].second;
      for (const auto& [id, sim] : coarse) {
        if (sim > best) {  // strict > keeps the lowest node_id on ties
          best = sim;
          best_id = id;
        }
      }
      retained.push_back(best_id);
    }
    for (uint32_t id : retained) {
      const TreeNode& node = tree.nodes[id];
      if (node.leaf_chunk.has_value()) {
        emit_leaf(node);
      } else {
        descend(node, 2);
      }
    }
  }
};

}  // namespace

std::vector<Candidate> search_tree(const EmbeddingVector& q_vec, const VideoTree& tree,
                                   const SearchConfig& cfg, SearchStats* stats,
                                   double* best_seen) {
  std::vector<Candidate> out;
  Traversal t{q_vec, tree, cfg, &out, stats};
  t.run();
  if (best_seen != nullptr) *best_seen = t.best_seen;
  return out;
}

SearchResult search_corpus(const EmbeddingVector& q_vec, const CorpusIndex& index,
                           const SearchConfig& cfg) {
  cfg.validate();
  SearchResult result;
  for (const VideoTree& tree : index.trees) {
    double best = -1.0;
    std::vector<Candidate> found = search_tree(q_vec, tree, cfg, &result.stats, &best);
    result.best_seen[tree.video_id] = best;
    std::move(found.begin(), found.end(), std::back_inserter(result.candidates));
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.cosine != b.cosine) return a.cosine > b.cosine;
              if (a.video_id != b.video_id) return a.video_id < b.video_id;
              return a.chunk_id < b.chunk_id;
            });
  if (result.candidates.size() > cfg.top_m) result.candidates.resize(cfg.top_m);
  return result;
}

}  // namespace vtr
