#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vtr/embedder.hpp"
#include "vtr/kg.hpp"
#include "vtr/types.hpp"

namespace vtr {

struct IndexConfig {
  uint32_t k_max = 16;          // upper bound on coarse clusters per video
  uint32_t kmeans_max_iters = 50;
  double kmeans_tol = 1e-6;     // stop when the largest centroid shift drops below this
  uint64_t rng_seed = 42;
  uint32_t hac_min_leaf_group = 4;  // dendrogram nodes this small collapse into one parent
  bool flat_mode = false;           // skip clustering: every chunk is a root child

  void validate() const;
  std::string config_hash() const;
};

// Deterministic pseudo-random stream used for k-means++ seeding.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct TreeNode {
  uint32_t node_id = 0;
  EmbeddingVector centroid;            // plain mean of descendant chunk embeddings
  std::vector<uint32_t> children;      // empty for leaves
  std::optional<uint32_t> leaf_chunk;  // set iff this node is a leaf
  uint32_t descendant_count = 0;       // leaves under (and including) this node
};

struct VideoTree {
  std::string video_id;
  std::string language;
  std::vector<uint32_t> root_children;  // the coarse clusters
  std::vector<TreeNode> nodes;          // indexed by node_id
  std::vector<EnrichedChunk> chunks;    // indexed by chunk_id
};

// Fills each chunk's embedding from its enriched_text, preserving order.
void embed_chunks(std::vector<EnrichedChunk>* chunks, Embedder* embedder);

// K-means++ initialization and Lloyd iterations, fully deterministic for a
// given seed. Returns the cluster assignment (values in [0, K)). Empty
// clusters are repaired by stealing the point farthest from its centroid.
std::vector<uint32_t> kmeans(const std::vector<EmbeddingVector>& points, uint32_t k,
                             const IndexConfig& cfg, uint64_t seed);

// A clustering subtree with node ids local to itself; build_tree renumbers
// them into the video-wide node table.
struct Subtree {
  std::vector<TreeNode> nodes;  // ids are positions in this vector
  uint32_t root = 0;
};

// Average-linkage agglomerative clustering over cosine distance. Builds the
// full binary dendrogram, then collapses every internal node covering at most
// hac_min_leaf_group leaves into a single multi-way parent. Equal-distance
// merges pick the pair with the lexicographically smallest (min_id, max_id).
Subtree hac_subtree(const std::vector<uint32_t>& member_chunk_ids,
                    const std::vector<EmbeddingVector>& embeddings, const IndexConfig& cfg);

// Builds one video's two-level tree: K-means coarse clusters, each refined by
// hac_subtree. K = min(k_max, ceil(sqrt(M)), M). Every node's centroid is the
// mean of its descendant chunk embeddings. The k-means seed is
// cfg.rng_seed ^ fnv1a64(video_id) so per-video builds are order-independent.
VideoTree build_tree(const std::string& video_id, const std::string& language,
                     std::vector<EnrichedChunk> chunks, const IndexConfig& cfg);

struct CorpusIndex {
  EmbedderFingerprint fingerprint;
  // Hashes of the configs that shaped the index (embedder, chunker,
  // enrichment, index); evaluation reports merge in the query-time ones.
  std::map<std::string, std::string> config_hashes;
  std::vector<VideoTree> trees;  // sorted by video_id

  const VideoTree* find(const std::string& video_id) const;
};

// Writes manifest.json plus one binary tree file per video into dir.
void save_index(const CorpusIndex& index, const std::string& dir);

// Loads an index directory, verifying per-file checksums (CorruptFile on any
// damage). When expected_fingerprint is provided and differs from the stored
// one, throws ManifestMismatch.
CorpusIndex load_index(const std::string& dir,
                       const std::optional<EmbedderFingerprint>& expected_fingerprint = {});

// Serialized form of one tree ("VTR1" little-endian layout); exposed for
// tests that check byte-identical rebuilds.
std::string serialize_tree(const VideoTree& tree, uint32_t dimension);
VideoTree deserialize_tree(const std::string& bytes);

}  // namespace vtr
