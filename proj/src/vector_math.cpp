#include "vtr/vector_math.hpp"

#include <algorithm>
#include <cmath>

#include "vtr/errors.hpp"

namespace vtr {

bool is_zero_vector(std::span<const float> v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

double l2_norm(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

void l2_normalize(EmbeddingVector& v) {
  double norm = l2_norm(v);
  if (norm == 0.0) return;  // sentinel stays sentinel
  for (float& x : v) x = static_cast<float>(x / norm);
}

static double dot(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += static_cast<double>(a[i]) * b[i];
  return sum;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine_similarity: dimensions " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  }
  const bool za = is_zero_vector(a);
  const bool zb = is_zero_vector(b);
  if (za && zb) throw BothZeroVectors("cosine_similarity: both inputs are zero vectors");
  if (za || zb) return 0.0;
  double cos = dot(a, b) / (l2_norm(a) * l2_norm(b));
  return std::clamp(cos, -1.0, 1.0);
}

double cosine_similarity_or_zero(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine_similarity: dimensions " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  }
  if (is_zero_vector(a) || is_zero_vector(b)) return 0.0;
  double cos = dot(a, b) / (l2_norm(a) * l2_norm(b));
  return std::clamp(cos, -1.0, 1.0);
}

EmbeddingVector centroid(const std::vector<EmbeddingVector>& vectors) {
  if (vectors.empty()) throw EmptySet("centroid: empty input set");
  const size_t d = vectors[0].size();
  std::vector<double> acc(d, 0.0);
  for (const auto& v : vectors) {
    if (v.size() != d) {
      throw DimensionMismatch("centroid: dimensions " + std::to_string(d) + " vs " +
                              std::to_string(v.size()));
    }
    for (size_t i = 0; i < d; ++i) acc[i] += v[i];
  }
  EmbeddingVector out(d);
  const double inv = 1.0 / static_cast<double>(vectors.size());
  for (size_t i = 0; i < d; ++i) out[i] = static_cast<float>(acc[i] * inv);
  return out;
}

EmbeddingVector centroid_of(const std::vector<EmbeddingVector>& vectors,
                            const std::vector<uint32_t>& indices) {
  if (indices.empty()) throw EmptySet("centroid_of: empty index set");
  const size_t d = vectors.at(indices[0]).size();
  std::vector<double> acc(d, 0.0);
  for (uint32_t idx : indices) {
    const auto& v = vectors.at(idx);
    if (v.size() != d) {
      throw DimensionMismatch("centroid_of: dimensions " + std::to_string(d) + " vs " +
                              std::to_string(v.size()));
    }
    for (size_t i = 0; i < d; ++i) acc[i] += v[i];
  }
  EmbeddingVector out(d);
  const double inv = 1.0 / static_cast<double>(indices.size());
  for (size_t i = 0; i < d; ++i) out[i] = static_cast<float>(acc[i] * inv);
  return out;
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double diff = static_cast<double>(a[i]) - b[i];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace vtr
