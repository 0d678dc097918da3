#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vtr/types.hpp"

namespace vtr {

enum class EmbedderKind { HashTrigram, File, Http };

std::string to_string(EmbedderKind kind);
EmbedderKind embedder_kind_from_string(const std::string& s);

struct EmbedderConfig {
  EmbedderKind kind = EmbedderKind::HashTrigram;
  uint32_t dimension = 256;
  std::string endpoint;     // http kind
  std::string vector_file;  // file kind
  uint32_t batch_size = 32;
  uint32_t timeout_ms = 10000;
  uint32_t cache_capacity = 4096;
  uint32_t max_attempts = 3;  // http retry budget, backoff 100/200/400 ms

  void validate() const;  // throws ConfigError
};

/// Identity of the embedding function, persisted in the index manifest and
/// re-checked at query time. Only (kind, dimension) enter the hash; cache
/// and batching knobs do not change what the provider computes.
struct EmbedderFingerprint {
  std::string kind;
  uint32_t dimension = 0;
  std::string config_hash;

  bool operator==(const EmbedderFingerprint&) const = default;
  std::string describe() const;
};

/// Deterministic stand-in for a multilingual sentence encoder: casefolds
/// the text, slides a 3-byte window over the UTF-8 bytes, hashes each
/// trigram with FNV-1a 64 into one of d buckets and L2-normalizes the
/// counts. Texts shorter than 3 bytes yield the zero sentinel.
EmbeddingVector hash_trigram_embed(const std::string& text, uint32_t dimension);

/// Embedding provider interface. embed_batch is safe for concurrent calls;
/// results are cached by exact text (LRU, internally synchronized).
class Embedder {
 public:
  explicit Embedder(EmbedderConfig config);
  virtual ~Embedder() = default;

  /// One L2-normalized vector per input text, order preserved. The empty
  /// string maps to the zero sentinel without touching the backend.
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts);

  EmbeddingVector embed(const std::string& text);

  const EmbedderConfig& config() const { return config_; }
  uint32_t dimension() const { return config_.dimension; }
  EmbedderFingerprint fingerprint() const;

 protected:
  /// Backend call for cache misses. texts are non-empty strings; must
  /// return one vector of the configured dimension per text.
  virtual std::vector<EmbeddingVector> embed_raw(const std::vector<std::string>& texts) = 0;

 private:
  EmbedderConfig config_;

  mutable std::mutex cache_mutex_;
  std::list<std::pair<std::string, EmbeddingVector>> lru_;
  std::unordered_map<std::string, decltype(lru_)::iterator> cache_;

  bool cache_lookup(const std::string& text, EmbeddingVector* out);
  void cache_insert(const std::string& text, const EmbeddingVector& vec);
};

class HashTrigramEmbedder : public Embedder {
 public:
  explicit HashTrigramEmbedder(EmbedderConfig config);

 protected:
  std::vector<EmbeddingVector> embed_raw(const std::vector<std::string>& texts) override;
};

/// Looks vectors up in a precomputed binary file keyed by SHA-256 of the
/// exact text. File layout: magic "EMB1", u32 dimension, u64 count, then
/// count records of (32-byte key, dimension little-endian f32).
class FileEmbedder : public Embedder {
 public:
  explicit FileEmbedder(EmbedderConfig config);  // loads and validates the file

 protected:
  std::vector<EmbeddingVector> embed_raw(const std::vector<std::string>& texts) override;

 private:
  std::unordered_map<std::string, EmbeddingVector> rows_;  // key = raw 32-byte digest
};

/// Remote embedding service client. POSTs {"texts": [...]} and expects
/// {"vectors": [[...], ...]} with status 200 on full success.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(EmbedderConfig config);

 protected:
  std::vector<EmbeddingVector> embed_raw(const std::vector<std::string>& texts) override;
};

/// Writes a FileEmbedder-compatible vector file. Used for offline
/// precomputation and in tests.
void write_vector_file(const std::string& path, uint32_t dimension,
                       const std::vector<std::pair<std::string, EmbeddingVector>>& rows);

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config);

/// Fingerprint the provider a config describes without constructing it.
EmbedderFingerprint fingerprint_for(const EmbedderConfig& config);

}  // namespace vtr
