#include "vtr/embedder.hpp"

#include <chrono>
#include <cstring>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/http_util.hpp"
#include "vtr/text_normalize.hpp"
#include "vtr/vector_math.hpp"

namespace vtr {

std::string to_string(EmbedderKind kind) {
  switch (kind) {
    case EmbedderKind::HashTrigram:
      return "hash_trigram";
    case EmbedderKind::File:
      return "file";
    case EmbedderKind::Http:
      return "http";
  }
  return "unknown";
}

EmbedderKind embedder_kind_from_string(const std::string& s) {
  if (s == "hash_trigram") return EmbedderKind::HashTrigram;
  if (s == "file") return EmbedderKind::File;
  if (s == "http") return EmbedderKind::Http;
  throw ConfigError("unknown embedder kind: " + s);
}

void EmbedderConfig::validate() const {
  if (dimension < 2) throw ConfigError("embedder dimension must be >= 2");
  if (batch_size == 0) throw ConfigError("embedder batch_size must be positive");
  if (timeout_ms == 0) throw ConfigError("embedder timeout_ms must be positive");
  if (max_attempts == 0) throw ConfigError("embedder max_attempts must be positive");
  if (kind == EmbedderKind::Http && endpoint.empty()) {
    throw ConfigError("http embedder requires an endpoint");
  }
  if (kind == EmbedderKind::File && vector_file.empty()) {
    throw ConfigError("file embedder requires a vector_file path");
  }
}

std::string EmbedderFingerprint::describe() const {
  return kind + "/d=" + std::to_string(dimension) + "/" + config_hash.substr(0, 12);
}

EmbeddingVector hash_trigram_embed(const std::string& text, uint32_t dimension) {
  std::string folded = nfkc_casefold(text);
  EmbeddingVector out(dimension, 0.0f);
  if (folded.size() < 3) return out;  // zero sentinel
  std::vector<double> counts(dimension, 0.0);
  for (size_t i = 0; i + 3 <= folded.size(); ++i) {
    uint64_t h = fnv1a64(folded.data() + i, 3);
    counts[h % dimension] += 1.0;
  }
  double sumsq = 0.0;
  for (double c : counts) sumsq += c * c;
  if (sumsq == 0.0) return out;
  double inv = 1.0 / std::sqrt(sumsq);
  for (uint32_t i = 0; i < dimension; ++i) out[i] = static_cast<float>(counts[i] * inv);
  return out;
}

Embedder::Embedder(EmbedderConfig config) : config_(std::move(config)) {
  config_.validate();
}

EmbedderFingerprint fingerprint_for(const EmbedderConfig& config) {
  nlohmann::json identity{{"kind", to_string(config.kind)}, {"dimension", config.dimension}};
  return {to_string(config.kind), config.dimension, sha256_hex(identity.dump())};
}

EmbedderFingerprint Embedder::fingerprint() const { return fingerprint_for(config_); }

bool Embedder::cache_lookup(const std::string& text, EmbeddingVector* out) {
  if (config_.cache_capacity == 0) return false;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(text);
  if (it == cache_.end()) return false;
  lru_.splice(lru_.begin(), lru_, it->second);
  *out = it->second->second;
  return true;
}

void Embedder::cache_insert(const std::string& text, const EmbeddingVector& vec) {
  if (config_.cache_capacity == 0) return;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(text);
  if (it != cache_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  lru_.emplace_front(text, vec);
  cache_[text] = lru_.begin();
  while (lru_.size() > config_.cache_capacity) {
    cache_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

std::vector<EmbeddingVector> Embedder::embed_batch(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out(texts.size());
  std::vector<size_t> miss_positions;
  std::vector<std::string> miss_texts;
  for (size_t i = 0; i < texts.size(); ++i) {
    if (texts[i].empty()) {
      out[i] = EmbeddingVector(config_.dimension, 0.0f);
      continue;
    }
    if (cache_lookup(texts[i], &out[i])) continue;
    miss_positions.push_back(i);
    miss_texts.push_back(texts[i]);
  }
  for (size_t off = 0; off < miss_texts.size(); off += config_.batch_size) {
    size_t n = std::min<size_t>(config_.batch_size, miss_texts.size() - off);
    std::vector<std::string> batch(miss_texts.begin() + off, miss_texts.begin() + off + n);
    std::vector<EmbeddingVector> vecs = embed_raw(batch);
    if (vecs.size() != batch.size()) {
      throw Error("embedder returned " + std::to_string(vecs.size()) + " vectors for " +
                  std::to_string(batch.size()) + " texts");
    }
    for (size_t j = 0; j < n; ++j) {
      if (vecs[j].size() != config_.dimension) {
        throw DimensionMismatch("embedder returned dimension " +
                                std::to_string(vecs[j].size()) + ", expected " +
                                std::to_string(config_.dimension));
      }
      cache_insert(batch[j], vecs[j]);
      out[miss_positions[off + j]] = std::move(vecs[j]);
    }
  }
  return out;
}

EmbeddingVector Embedder::embed(const std::string& text) {
  return embed_batch({text})[0];
}

HashTrigramEmbedder::HashTrigramEmbedder(EmbedderConfig config) : Embedder(std::move(config)) {}

std::vector<EmbeddingVector> HashTrigramEmbedder::embed_raw(
    const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(hash_trigram_embed(t, dimension()));
  return out;
}

namespace {

template <typename T>
void read_le(std::istream& in, T* value) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  *value = v;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

FileEmbedder::FileEmbedder(EmbedderConfig config) : Embedder(std::move(config)) {
  std::ifstream in(this->config().vector_file, std::ios::binary);
  if (!in) throw CorruptFile("cannot open vector file: " + this->config().vector_file);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "EMB1", 4) != 0) {
    throw CorruptFile("vector file missing EMB1 magic: " + this->config().vector_file);
  }
  uint32_t file_dim = 0;
  uint64_t count = 0;
  read_le(in, &file_dim);
  read_le(in, &count);
  if (!in) throw CorruptFile("truncated vector file header");
  if (file_dim != dimension()) {
    throw DimensionMismatch("vector file dimension " + std::to_string(file_dim) +
                            " does not match configured " + std::to_string(dimension()));
  }
  for (uint64_t r = 0; r < count; ++r) {
    std::string key(32, '\0');
    in.read(key.data(), 32);
    EmbeddingVector vec(file_dim);
    for (uint32_t i = 0; i < file_dim; ++i) {
      uint32_t bits = 0;
      read_le(in, &bits);
      float f;
      std::memcpy(&f, &bits, 4);
      vec[i] = f;
    }
    if (!in) throw CorruptFile("truncated vector file record " + std::to_string(r));
    l2_normalize(vec);
    rows_.emplace(std::move(key), std::move(vec));
  }
}

std::vector<EmbeddingVector> FileEmbedder::embed_raw(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    auto digest = sha256(t);
    std::string key(reinterpret_cast<const char*>(digest.data()), digest.size());
    auto it = rows_.find(key);
    if (it == rows_.end()) {
      throw MissingVector("no precomputed vector for text: " +
                          truncate_codepoints(t, 60));
    }
    out.push_back(it->second);
  }
  return out;
}

void write_vector_file(const std::string& path, uint32_t dimension,
                       const std::vector<std::pair<std::string, EmbeddingVector>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write vector file: " + path);
  out.write("EMB1", 4);
  write_le(out, dimension);
  write_le(out, static_cast<uint64_t>(rows.size()));
  for (const auto& [text, vec] : rows) {
    if (vec.size() != dimension) {
      throw DimensionMismatch("vector file row dimension mismatch for: " + text);
    }
    auto digest = sha256(text);
    out.write(reinterpret_cast<const char*>(digest.data()), digest.size());
    for (float f : vec) {
      uint32_t bits;
      std::memcpy(&bits, &f, 4);
      write_le(out, bits);
    }
  }
}

HttpEmbedder::HttpEmbedder(EmbedderConfig config) : Embedder(std::move(config)) {}

std::vector<EmbeddingVector> HttpEmbedder::embed_raw(const std::vector<std::string>& texts) {
  ParsedUrl url = parse_url(config().endpoint);
  nlohmann::json body{{"texts", texts}};
  const std::string payload = body.dump();
  std::string last_error;
  for (uint32_t attempt = 0; attempt < config().max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100u << (attempt - 1)));
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(0, config().timeout_ms * 1000);
    client.set_read_timeout(config().timeout_ms / 1000, (config().timeout_ms % 1000) * 1000);
    auto res = client.Post(url.path, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
      std::vector<EmbeddingVector> out;
      for (const auto& row : reply.at("vectors")) {
        EmbeddingVector vec = row.get<EmbeddingVector>();
        if (vec.size() != dimension()) {
          throw DimensionMismatch("remote returned dimension " + std::to_string(vec.size()) +
                                  ", expected " + std::to_string(dimension()));
        }
        l2_normalize(vec);
        out.push_back(std::move(vec));
      }
      if (out.size() != texts.size()) {
        last_error = "remote returned wrong vector count";
        continue;
      }
      return out;
    } catch (const DimensionMismatch&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("bad response body: ") + e.what();
      continue;
    }
  }
  throw RemoteUnavailable("embedding service failed after " +
                          std::to_string(config().max_attempts) + " attempts (" + last_error +
                          "): " + config().endpoint);
}

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config) {
  config.validate();
  switch (config.kind) {
    case EmbedderKind::HashTrigram:
      return std::make_unique<HashTrigramEmbedder>(config);
    case EmbedderKind::File:
      return std::make_unique<FileEmbedder>(config);
    case EmbedderKind::Http:
      return std::make_unique<HttpEmbedder>(config);
  }
  throw ConfigError("unhandled embedder kind");
}

}  // namespace vtr
