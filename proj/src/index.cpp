#include "vtr/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/vector_math.hpp"

namespace fs = std::filesystem;

namespace vtr {

void IndexConfig::validate() const {
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  if (kmeans_max_iters < 1) throw ConfigError("kmeans_max_iters must be >= 1");
  if (kmeans_tol < 0.0) throw ConfigError("kmeans_tol must be >= 0");
  if (hac_min_leaf_group < 1) throw ConfigError("hac_min_leaf_group must be >= 1");
}

std::string IndexConfig::config_hash() const {
  nlohmann::json j{{"k_max", k_max},
                   {"kmeans_max_iters", kmeans_max_iters},
                   {"kmeans_tol", kmeans_tol},
                   {"rng_seed", rng_seed},
                   {"hac_min_leaf_group", hac_min_leaf_group},
                   {"flat_mode", flat_mode}};
  return sha256_hex(j.dump());
}

void embed_chunks(std::vector<EnrichedChunk>* chunks, Embedder* embedder) {
  std::vector<std::string> texts;
  texts.reserve(chunks->size());
  for (const auto& c : *chunks) texts.push_back(c.enriched_text);
  std::vector<EmbeddingVector> vectors = embedder->embed_batch(texts);
  for (size_t i = 0; i < chunks->size(); ++i) (*chunks)[i].embedding = std::move(vectors[i]);
}

namespace {

double sq_dist(const std::vector<double>& center, const EmbeddingVector& p) {
  double sum = 0.0;
  for (size_t i = 0; i < center.size(); ++i) {
    const double diff = center[i] - static_cast<double>(p[i]);
    sum += diff * diff;
  }
  return sum;
}

std::vector<double> to_double(const EmbeddingVector& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace

std::vector<uint32_t> kmeans(const std::vector<EmbeddingVector>& points, uint32_t k,
                             const IndexConfig& cfg, uint64_t seed) {
  const size_t n = points.size();
  if (k > n) {
    throw KTooLarge("k-means asked for " + std::to_string(k) + " clusters over " +
                    std::to_string(n) + " points");
  }
  if (k == 0) throw KTooLarge("k-means needs at least one cluster");
  const size_t d = points[0].size();
  for (const auto& p : points) {
    if (p.size() != d) throw DimensionMismatch("k-means points differ in dimension");
  }

  SplitMix64 rng(seed);
  std::vector<std::vector<double>> centers;
  centers.reserve(k);

  // k-means++ seeding: first center uniform, then proportional to squared
  // distance from the nearest chosen center.
  centers.push_back(to_double(points[rng.next() % n]));
  std::vector<double> d2(n, 0.0);
  for (uint32_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double best = sq_dist(centers[0], points[i]);
      for (size_t j = 1; j < centers.size(); ++j) {
        best = std::min(best, sq_dist(centers[j], points[i]));
      }
      d2[i] = best;
      total += best;
    }
    size_t chosen = 0;
    if (total > 0.0) {
      const double r = rng.next_double() * total;
      double cum = 0.0;
      chosen = n - 1;
      for (size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (cum > r) {
          chosen = i;
          break;
        }
      }
    } else {
      // All points coincide with existing centers; take the first index not
      // already used so every cluster still gets a seed.
      chosen = std::min<size_t>(c, n - 1);
    }
    centers.push_back(to_double(points[chosen]));
  }

  std::vector<uint32_t> assignment(n, 0);
  for (uint32_t iter = 0; iter < cfg.kmeans_max_iters; ++iter) {
    // Assign each point to its nearest center (ties to the lowest index).
    for (size_t i = 0; i < n; ++i) {
      uint32_t best_c = 0;
      double best = sq_dist(centers[0], points[i]);
      for (uint32_t c = 1; c < k; ++c) {
        const double dist = sq_dist(centers[c], points[i]);
        if (dist < best) {
          best = dist;
          best_c = c;
        }
      }
      assignment[i] = best_c;
    }

    // Repair empty clusters by stealing the point farthest from its own
    // center, drawn from clusters that can spare one.
    std::vector<uint32_t> counts(k, 0);
    for (uint32_t a : assignment) ++counts[a];
    for (uint32_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      double worst = -1.0;
      size_t victim = n;
      for (size_t i = 0; i < n; ++i) {
        if (counts[assignment[i]] <= 1) continue;
        const double dist = sq_dist(centers[assignment[i]], points[i]);
        if (dist > worst) {
          worst = dist;
          victim = i;
        }
      }
      if (victim == n) continue;  // n < k is impossible; only duplicates land here
      --counts[assignment[victim]];
      assignment[victim] = c;
      ++counts[c];
    }

    // Recompute centers as member means and measure the largest shift.
    std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
    for (size_t i = 0; i < n; ++i) {
      for (size_t f = 0; f < d; ++f) sums[assignment[i]][f] += points[i][f];
    }
    double max_shift = 0.0;
    for (uint32_t c = 0; c < k; ++c) {
      double shift_sq = 0.0;
      for (size_t f = 0; f < d; ++f) {
        sums[c][f] /= counts[c];
        const double diff = sums[c][f] - centers[c][f];
        shift_sq += diff * diff;
      }
      max_shift = std::max(max_shift, std::sqrt(shift_sq));
      centers[c] = std::move(sums[c]);
    }
    if (max_shift < cfg.kmeans_tol) break;
  }
  return assignment;
}

namespace {

// Gathers the member (local) ids under a dendrogram cluster, ascending.
void collect_leaves(uint32_t cid, uint32_t m, const std::vector<std::pair<uint32_t, uint32_t>>& merges,
                    std::vector<uint32_t>* out) {
  if (cid < m) {
    out->push_back(cid);
    return;
  }
  collect_leaves(merges[cid - m].first, m, merges, out);
  collect_leaves(merges[cid - m].second, m, merges, out);
}

}  // namespace

Subtree hac_subtree(const std::vector<uint32_t>& member_chunk_ids,
                    const std::vector<EmbeddingVector>& embeddings, const IndexConfig& cfg) {
  const uint32_t m = static_cast<uint32_t>(member_chunk_ids.size());
  if (m == 0) throw EmptyMemberSet("clustering subtree needs at least one member");
  if (embeddings.size() != member_chunk_ids.size()) {
    throw DimensionMismatch("member ids and embeddings differ in length");
  }

  Subtree out;
  if (m == 1) {
    TreeNode leaf;
    leaf.node_id = 0;
    leaf.centroid = embeddings[0];
    leaf.leaf_chunk = member_chunk_ids[0];
    leaf.descendant_count = 1;
    out.nodes.push_back(std::move(leaf));
    out.root = 0;
    return out;
  }

  // Dendrogram clusters: ids 0..m-1 are members, merges take ids m, m+1, ...
  const uint32_t total = 2 * m - 1;
  std::vector<std::vector<double>> dist(total, std::vector<double>(total, 0.0));
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t j = i + 1; j < m; ++j) {
      const double d = 1.0 - cosine_similarity_or_zero(embeddings[i], embeddings[j]);
      dist[i][j] = d;
      dist[j][i] = d;
    }
  }
  std::vector<bool> active(total, false);
  std::vector<uint32_t> sizes(total, 0);
  for (uint32_t i = 0; i < m; ++i) {
    active[i] = true;
    sizes[i] = 1;
  }
  std::vector<std::pair<uint32_t, uint32_t>> merges;  // cluster id m+t -> its two children
  merges.reserve(m - 1);

  for (uint32_t step = 0; step < m - 1; ++step) {
    const uint32_t limit = m + step;
    uint32_t best_i = 0, best_j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (uint32_t i = 0; i < limit; ++i) {
      if (!active[i]) continue;
      for (uint32_t j = i + 1; j < limit; ++j) {
        if (!active[j]) continue;
        if (dist[i][j] < best) {  // strict < keeps the smallest (i, j) on ties
          best = dist[i][j];
          best_i = i;
          best_j = j;
        }
      }
    }
    const uint32_t merged = m + step;
    const uint32_t ni = sizes[best_i], nj = sizes[best_j];
    sizes[merged] = ni + nj;
    // Average linkage via the Lance-Williams update.
    for (uint32_t k2 = 0; k2 < limit; ++k2) {
      if (!active[k2] || k2 == best_i || k2 == best_j) continue;
      const double d = (ni * dist[best_i][k2] + nj * dist[best_j][k2]) / (ni + nj);
      dist[merged][k2] = d;
      dist[k2][merged] = d;
    }
    active[best_i] = false;
    active[best_j] = false;
    active[merged] = true;
    merges.emplace_back(best_i, best_j);
  }

  // Emit tree nodes in pre-order, collapsing small internal clusters into a
  // single parent that holds its leaves directly.
  const uint32_t root_cluster = total - 1;
  struct Emitter {
    const std::vector<uint32_t>& chunk_ids;
    const std::vector<EmbeddingVector>& emb;
    const std::vector<std::pair<uint32_t, uint32_t>>& merges;
    const std::vector<uint32_t>& sizes;
    uint32_t m;
    uint32_t collapse_at;
    Subtree* out;

    uint32_t emit(uint32_t cid) {
      const uint32_t id = static_cast<uint32_t>(out->nodes.size());
      out->nodes.emplace_back();
      if (cid < m) {
        TreeNode& leaf = out->nodes[id];
        leaf.node_id = id;
        leaf.centroid = emb[cid];
        leaf.leaf_chunk = chunk_ids[cid];
        leaf.descendant_count = 1;
        return id;
      }
      std::vector<uint32_t> members;
      collect_leaves(cid, m, merges, &members);
      std::sort(members.begin(), members.end());
      {
        TreeNode& node = out->nodes[id];
        node.node_id = id;
        node.centroid = centroid_of(emb, members);
        node.descendant_count = sizes[cid];
      }
      std::vector<uint32_t> children;
      if (sizes[cid] <= collapse_at) {
        for (uint32_t member : members) children.push_back(emit(member));
      } else {
        children.push_back(emit(merges[cid - m].first));
        children.push_back(emit(merges[cid - m].second));
      }
      out->nodes[id].children = std::move(children);
      return id;
    }
  };
  Emitter emitter{member_chunk_ids, embeddings, merges,
                  sizes,            m,          cfg.hac_min_leaf_group,
                  &out};
  out.root = emitter.emit(root_cluster);
  return out;
}

VideoTree build_tree(const std::string& video_id, const std::string& language,
                     std::vector<EnrichedChunk> chunks, const IndexConfig& cfg) {
  if (chunks.empty()) throw NoChunks("video " + video_id + " has no chunks to index");
  cfg.validate();
  const size_t d = chunks[0].embedding.size();
  for (size_t i = 0; i < chunks.size(); ++i) {
    if (chunks[i].base.chunk_id != i) {
      throw Error("chunk ids must be contiguous from 0 for video " + video_id);
    }
    if (chunks[i].embedding.size() != d || d == 0) {
      throw DimensionMismatch("chunk embeddings for video " + video_id +
                              " are missing or differ in dimension");
    }
  }

  VideoTree tree;
  tree.video_id = video_id;
  tree.language = language;
  const uint32_t count = static_cast<uint32_t>(chunks.size());

  if (cfg.flat_mode) {
    for (uint32_t i = 0; i < count; ++i) {
      TreeNode leaf;
      leaf.node_id = i;
      leaf.centroid = chunks[i].embedding;
      leaf.leaf_chunk = i;
      leaf.descendant_count = 1;
      tree.nodes.push_back(std::move(leaf));
      tree.root_children.push_back(i);
    }
    tree.chunks = std::move(chunks);
    return tree;
  }

  const uint32_t sqrt_k = static_cast<uint32_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const uint32_t k = std::min({cfg.k_max, sqrt_k, count});
  std::vector<EmbeddingVector> points;
  points.reserve(count);
  for (const auto& c : chunks) points.push_back(c.embedding);
  const uint64_t seed = cfg.rng_seed ^ fnv1a64(video_id);
  const std::vector<uint32_t> assignment = kmeans(points, k, cfg, seed);

  std::vector<std::vector<uint32_t>> members(k);
  for (uint32_t i = 0; i < count; ++i) members[assignment[i]].push_back(i);

  for (uint32_t c = 0; c < k; ++c) {
    std::vector<EmbeddingVector> member_emb;
    member_emb.reserve(members[c].size());
    for (uint32_t id : members[c]) member_emb.push_back(points[id]);
    Subtree sub = hac_subtree(members[c], member_emb, cfg);
    const uint32_t offset = static_cast<uint32_t>(tree.nodes.size());
    for (TreeNode& node : sub.nodes) {
      node.node_id += offset;
      for (uint32_t& child : node.children) child += offset;
      tree.nodes.push_back(std::move(node));
    }
    tree.root_children.push_back(offset + sub.root);
  }
  tree.chunks = std::move(chunks);
  return tree;
}

const VideoTree* CorpusIndex::find(const std::string& video_id) const {
  auto it = std::lower_bound(trees.begin(), trees.end(), video_id,
                             [](const VideoTree& t, const std::string& id) {
                               return t.video_id < id;
                             });
  if (it == trees.end() || it->video_id != video_id) return nullptr;
  return &*it;
}

namespace {

constexpr char kTreeMagic[4] = {'V', 'T', 'R', '1'};
constexpr uint32_t kTreeVersion = 1;

void put_u32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string* out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u32(out, bits);
}

void put_str(std::string* out, const std::string& s) {
  put_u32(out, static_cast<uint32_t>(s.size()));
  out->append(s);
}

class Reader {
 public:
  explicit Reader(const std::string& bytes, size_t start = 0) : bytes_(bytes), pos_(start) {}

  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  float f32() {
    const uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string str() {
    const uint32_t len = u32();
    need(len);
    std::string s = bytes_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  uint8_t u8() {
    need(1);
    return static_cast<uint8_t>(bytes_[pos_++]);
  }

  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  void need(size_t n) {
    if (pos_ + n > bytes_.size()) throw CorruptFile("tree file truncated");
  }

  const std::string& bytes_;
  size_t pos_ = 0;
};

std::string sanitize_id(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
    if (out.size() >= 40) break;
  }
  if (out.empty()) out = "video";
  return out;
}

std::string tree_file_name(const std::string& video_id) {
  return sanitize_id(video_id) + "-" + sha256_hex(video_id).substr(0, 12) + ".vtr";
}

}  // namespace

std::string serialize_tree(const VideoTree& tree, uint32_t dimension) {
  std::string out;
  out.append(kTreeMagic, 4);
  put_u32(&out, kTreeVersion);
  put_u32(&out, dimension);
  put_str(&out, tree.video_id);
  put_str(&out, tree.language);
  put_u32(&out, static_cast<uint32_t>(tree.nodes.size()));
  put_u32(&out, static_cast<uint32_t>(tree.chunks.size()));
  put_u32(&out, static_cast<uint32_t>(tree.root_children.size()));
  for (uint32_t id : tree.root_children) put_u32(&out, id);
  for (const TreeNode& node : tree.nodes) {
    put_u32(&out, node.descendant_count);
    out.push_back(node.leaf_chunk.has_value() ? 1 : 0);
    if (node.leaf_chunk.has_value()) put_u32(&out, *node.leaf_chunk);
    put_u32(&out, static_cast<uint32_t>(node.children.size()));
    for (uint32_t child : node.children) put_u32(&out, child);
    if (node.centroid.size() != dimension) {
      throw DimensionMismatch("tree node centroid does not match the index dimension");
    }
    for (float v : node.centroid) put_f32(&out, v);
  }
  for (const EnrichedChunk& chunk : tree.chunks) {
    put_u32(&out, chunk.base.first_line);
    put_u32(&out, chunk.base.last_line);
    put_str(&out, chunk.base.text);
    put_str(&out, chunk.base.language);
    put_str(&out, chunk.enriched_text);
    put_u32(&out, static_cast<uint32_t>(chunk.entities.size()));
    for (const auto& e : chunk.entities) put_str(&out, e);
    put_u32(&out, static_cast<uint32_t>(chunk.facts.size()));
    for (const auto& f : chunk.facts) put_str(&out, f);
    if (chunk.embedding.size() != dimension) {
      throw DimensionMismatch("chunk embedding does not match the index dimension");
    }
    for (float v : chunk.embedding) put_f32(&out, v);
  }
  return out;
}

VideoTree deserialize_tree(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTreeMagic, 4) != 0) {
    throw CorruptFile("tree file is missing its magic header");
  }
  Reader r(bytes, 4);  // past the magic
  const uint32_t version = r.u32();
  if (version != kTreeVersion) {
    throw CorruptFile("unsupported tree file version " + std::to_string(version));
  }
  const uint32_t dimension = r.u32();
  VideoTree tree;
  tree.video_id = r.str();
  tree.language = r.str();
  const uint32_t node_count = r.u32();
  const uint32_t chunk_count = r.u32();
  const uint32_t root_count = r.u32();
  tree.root_children.reserve(root_count);
  for (uint32_t i = 0; i < root_count; ++i) tree.root_children.push_back(r.u32());
  tree.nodes.reserve(node_count);
  for (uint32_t i = 0; i < node_count; ++i) {
    TreeNode node;
    node.node_id = i;
    node.descendant_count = r.u32();
    if (r.u8() != 0) node.leaf_chunk = r.u32();
    const uint32_t child_count = r.u32();
    node.children.reserve(child_count);
    for (uint32_t c = 0; c < child_count; ++c) node.children.push_back(r.u32());
    node.centroid.reserve(dimension);
    for (uint32_t f = 0; f < dimension; ++f) node.centroid.push_back(r.f32());
    tree.nodes.push_back(std::move(node));
  }
  tree.chunks.reserve(chunk_count);
  for (uint32_t i = 0; i < chunk_count; ++i) {
    EnrichedChunk chunk;
    chunk.base.video_id = tree.video_id;
    chunk.base.chunk_id = i;
    chunk.base.first_line = r.u32();
    chunk.base.last_line = r.u32();
    chunk.base.text = r.str();
    chunk.base.language = r.str();
    chunk.enriched_text = r.str();
    const uint32_t entity_count = r.u32();
    for (uint32_t e = 0; e < entity_count; ++e) chunk.entities.push_back(r.str());
    const uint32_t fact_count = r.u32();
    for (uint32_t f = 0; f < fact_count; ++f) chunk.facts.push_back(r.str());
    chunk.embedding.reserve(dimension);
    for (uint32_t f = 0; f < dimension; ++f) chunk.embedding.push_back(r.f32());
    tree.chunks.push_back(std::move(chunk));
  }
  if (!r.exhausted()) throw CorruptFile("tree file has trailing bytes");
  for (const TreeNode& node : tree.nodes) {
    const bool is_leaf = node.leaf_chunk.has_value();
    if (is_leaf == !node.children.empty()) {
      throw CorruptFile("tree node must be either a leaf or have children");
    }
    if (is_leaf && *node.leaf_chunk >= chunk_count) {
      throw CorruptFile("tree leaf references an unknown chunk");
    }
    for (uint32_t child : node.children) {
      if (child >= node_count) throw CorruptFile("tree node references an unknown child");
    }
  }
  for (uint32_t root : tree.root_children) {
    if (root >= node_count) throw CorruptFile("tree root references an unknown node");
  }
  return tree;
}

void save_index(const CorpusIndex& index, const std::string& dir) {
  fs::create_directories(dir);
  nlohmann::json videos = nlohmann::json::array();
  for (const VideoTree& tree : index.trees) {
    const std::string file = tree_file_name(tree.video_id);
    const std::string bytes = serialize_tree(tree, index.fingerprint.dimension);
    std::ofstream out(fs::path(dir) / file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write tree file " + file + " in " + dir);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    videos.push_back({{"video_id", tree.video_id},
                      {"language", tree.language},
                      {"file", file},
                      {"chunks", tree.chunks.size()},
                      {"nodes", tree.nodes.size()},
                      {"sha256", sha256_hex(bytes)}});
  }
  nlohmann::json manifest{
      {"format", "vtr-index"},
      {"version", 1},
      {"embedder",
       {{"kind", index.fingerprint.kind},
        {"dimension", index.fingerprint.dimension},
        {"config_hash", index.fingerprint.config_hash}}},
      {"config_hashes", index.config_hashes},
      {"videos", videos}};
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write index manifest in " + dir);
  out << manifest.dump(2) << "\n";
}

CorpusIndex load_index(const std::string& dir,
                       const std::optional<EmbedderFingerprint>& expected_fingerprint) {
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw CorruptFile("index manifest not found: " + manifest_path.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFile("index manifest unreadable: " + std::string(e.what()));
  }
  if (manifest.value("format", "") != "vtr-index" || manifest.value("version", 0) != 1) {
    throw CorruptFile("not a recognized index directory: " + dir);
  }

  CorpusIndex index;
  try {
    const auto& emb = manifest.at("embedder");
    index.fingerprint.kind = emb.at("kind").get<std::string>();
    index.fingerprint.dimension = emb.at("dimension").get<uint32_t>();
    index.fingerprint.config_hash = emb.at("config_hash").get<std::string>();
    for (const auto& [component, hash] : manifest.at("config_hashes").items()) {
      index.config_hashes[component] = hash.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFile("index manifest missing fields: " + std::string(e.what()));
  }

  if (expected_fingerprint.has_value() && !(*expected_fingerprint == index.fingerprint)) {
    throw ManifestMismatch("index was built with embedder " + index.fingerprint.describe() +
                           " but the current config uses " + expected_fingerprint->describe());
  }

  for (const auto& entry : manifest.at("videos")) {
    const std::string file = entry.at("file").get<std::string>();
    const fs::path path = fs::path(dir) / file;
    std::ifstream tree_in(path, std::ios::binary);
    if (!tree_in) throw CorruptFile("tree file missing: " + path.string());
    std::ostringstream buf;
    buf << tree_in.rdbuf();
    const std::string bytes = buf.str();
    const std::string want_sha = entry.at("sha256").get<std::string>();
    if (sha256_hex(bytes) != want_sha) {
      throw CorruptFile("checksum mismatch for tree file " + file);
    }
    VideoTree tree = deserialize_tree(bytes);
    if (tree.video_id != entry.at("video_id").get<std::string>()) {
      throw CorruptFile("tree file " + file + " holds a different video than the manifest says");
    }
    index.trees.push_back(std::move(tree));
  }
  std::sort(index.trees.begin(), index.trees.end(),
            [](const VideoTree& a, const VideoTree& b) { return a.video_id < b.video_id; });
  return index;
}

}  // namespace vtr
