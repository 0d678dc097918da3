#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vtr/types.hpp"

namespace vtr {

// One relevant video per query.
using Qrels = std::map<std::string, std::string>;

struct EvaluationReport {
  std::map<uint32_t, double> r_at;  // n -> recall@n, for n in {1, 10, 50}
  double mrr = 0.0;
  double overall = 0.0;  // r@1 + r@10 + r@50 + mrr
  std::map<std::string, uint32_t> per_query_rank;
};

// Fraction of queries whose ground-truth rank is <= n.
double recall_at_n(const std::vector<uint32_t>& ranks, uint32_t n);

double mean_reciprocal_rank(const std::vector<uint32_t>& ranks);

// Plain 64-bit double sum, in this argument order; the report's overall
// field is exactly this expression over its own fields.
double overall_score(double r1, double r10, double r50, double mrr);

// Scores ranked video lists against the judgments. Rank is the 1-based
// position of the ground-truth video; a missing ground truth scores as
// list length + 1 and logs a warning.
EvaluationReport evaluate_run(const std::map<std::string, std::vector<std::string>>& ranked_lists,
                              const Qrels& qrels);

// query_id \t text \t language per row.
std::vector<Query> load_queries_tsv(const std::string& path);

// query_id \t video_id per row.
Qrels load_qrels_tsv(const std::string& path);

// Fixed 6-decimal formatting shared by all report numbers.
std::string fixed6(double v);

// query_id \t rank rows, sorted by query_id, trailing newline.
std::string per_query_tsv(const EvaluationReport& report);

}  // namespace vtr
