#include "vtr/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "vtr/errors.hpp"
#include "vtr/text_normalize.hpp"

namespace vtr {

namespace {

void check_ranks(const std::vector<uint32_t>& ranks) {
  if (ranks.empty()) throw EmptyRankList("no ranks to score");
  for (uint32_t r : ranks) {
    if (r < 1) throw Error("ranks are 1-based; got 0");
  }
}

}  // namespace

double recall_at_n(const std::vector<uint32_t>& ranks, uint32_t n) {
  check_ranks(ranks);
  if (n < 1) throw Error("recall cutoff must be >= 1");
  size_t hits = 0;
  for (uint32_t r : ranks) {
    if (r <= n) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mean_reciprocal_rank(const std::vector<uint32_t>& ranks) {
  check_ranks(ranks);
  double sum = 0.0;
  for (uint32_t r : ranks) sum += 1.0 / static_cast<double>(r);
  return sum / static_cast<double>(ranks.size());
}

double overall_score(double r1, double r10, double r50, double mrr) {
  return r1 + r10 + r50 + mrr;
}

EvaluationReport evaluate_run(const std::map<std::string, std::vector<std::string>>& ranked_lists,
                              const Qrels& qrels) {
  EvaluationReport report;
  std::vector<uint32_t> ranks;
  ranks.reserve(qrels.size());
  for (const auto& [query_id, truth] : qrels) {
    auto it = ranked_lists.find(query_id);
    if (it == ranked_lists.end()) {
      throw MissingQuery("no ranked list for query " + query_id);
    }
    const std::vector<std::string>& list = it->second;
    std::set<std::string> seen;
    uint32_t rank = static_cast<uint32_t>(list.size()) + 1;
    for (size_t i = 0; i < list.size(); ++i) {
      if (!seen.insert(list[i]).second) {
        throw DuplicateVideoInList("query " + query_id + " ranks video " + list[i] + " twice");
      }
      if (list[i] == truth) rank = static_cast<uint32_t>(i) + 1;
    }
    if (rank == list.size() + 1) {
      std::cerr << "warning: ground-truth video " << truth << " absent from the ranking for "
                << query_id << "; scored as rank " << rank << "\n";
    }
    report.per_query_rank[query_id] = rank;
    ranks.push_back(rank);
  }
  for (uint32_t n : {1u, 10u, 50u}) report.r_at[n] = recall_at_n(ranks, n);
  report.mrr = mean_reciprocal_rank(ranks);
  report.overall = overall_score(report.r_at[1], report.r_at[10], report.r_at[50], report.mrr);
  return report;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream row(line);
  while (std::getline(row, field, '\t')) fields.push_back(field);
  return fields;
}

void for_each_row(const std::string& path,
                  const std::function<void(size_t, const std::vector<std::string>&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line_no, split_tabs(line));
  }
}

}  // namespace

std::vector<Query> load_queries_tsv(const std::string& path) {
  std::vector<Query> queries;
  std::set<std::string> ids;
  for_each_row(path, [&](size_t line_no, const std::vector<std::string>& fields) {
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("query row needs query_id, text and optional language in " + path,
                       line_no);
    }
    Query q;
    q.query_id = fields[0];
    q.text = fields[1];
    if (fields.size() > 2) q.language = fields[2];
    if (q.query_id.empty()) throw ParseError("empty query_id in " + path, line_no);
    if (!ids.insert(q.query_id).second) {
      throw ParseError("duplicate query_id " + q.query_id + " in " + path, line_no);
    }
    queries.push_back(std::move(q));
  });
  return queries;
}

Qrels load_qrels_tsv(const std::string& path) {
  Qrels qrels;
  for_each_row(path, [&](size_t line_no, const std::vector<std::string>& fields) {
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError("qrels row needs query_id and video_id in " + path, line_no);
    }
    if (!qrels.emplace(fields[0], fields[1]).second) {
      throw ParseError("duplicate qrels entry for query " + fields[0] + " in " + path, line_no);
    }
  });
  return qrels;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string per_query_tsv(const EvaluationReport& report) {
  std::string out;
  for (const auto& [query_id, rank] : report.per_query_rank) {
    out += query_id;
    out += '\t';
    out += std::to_string(rank);
    out += '\n';
  }
  return out;
}

}  // namespace vtr
