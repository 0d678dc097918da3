#pragma once

#include <span>
#include <vector>

#include "vtr/types.hpp"

namespace vtr {

/// True iff every component is exactly zero (the empty-text sentinel).
bool is_zero_vector(std::span<const float> v);

/// Euclidean norm, accumulated in double.
double l2_norm(std::span<const float> v);

/// Scales v to unit norm in place. The zero sentinel is left untouched.
void l2_normalize(EmbeddingVector& v);

/// Cosine similarity in [-1, 1]. If exactly one input is the zero sentinel
/// the result is 0. Throws DimensionMismatch on unequal lengths and
/// BothZeroVectors when both inputs are zero.
double cosine_similarity(std::span<const float> a, std::span<const float> b);

/// Like cosine_similarity but total: zero/zero pairs compare as 0.
/// Used on internal scoring paths where sentinel chunks may meet.
double cosine_similarity_or_zero(std::span<const float> a, std::span<const float> b);

/// Componentwise mean of a non-empty set of same-dimension vectors.
/// Sums are accumulated in double; the result is not re-normalized.
EmbeddingVector centroid(const std::vector<EmbeddingVector>& vectors);

/// Mean over vectors[i] for i in indices, same contract as centroid().
EmbeddingVector centroid_of(const std::vector<EmbeddingVector>& vectors,
                            const std::vector<uint32_t>& indices);

/// Squared Euclidean distance, accumulated in double.
double squared_distance(std::span<const float> a, std::span<const float> b);

}  // namespace vtr
