#include "vtr/rerank.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <optional>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/http_util.hpp"

namespace vtr {

std::string to_string(RerankerKind kind) {
  switch (kind) {
    case RerankerKind::None:
      return "none";
    case RerankerKind::Mock:
      return "mock";
    case RerankerKind::Http:
      return "http";
  }
  return "none";
}

RerankerKind reranker_kind_from_string(const std::string& s) {
  if (s == "none") return RerankerKind::None;
  if (s == "mock") return RerankerKind::Mock;
  if (s == "http") return RerankerKind::Http;
  throw ConfigError("unknown reranker kind: " + s);
}

void RerankerConfig::validate() const {
  if (kind == RerankerKind::Http && endpoint.empty()) {
    throw ConfigError("http reranker requires an endpoint");
  }
  if (fallback_rating < 1 || fallback_rating > 3) {
    throw ConfigError("fallback_rating must be in {1, 2, 3}");
  }
  if (!(band_low < band_high)) throw ConfigError("band_low must be below band_high");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (prompt_template.find("{query}") == std::string::npos ||
      prompt_template.find("{chunk}") == std::string::npos) {
    throw ConfigError("prompt_template needs both {query} and {chunk} slots");
  }
}

std::string RerankerConfig::config_hash() const {
  nlohmann::json j{{"kind", to_string(kind)},
                   {"prompt_template", prompt_template},
                   {"max_retries", max_retries},
                   {"fallback_rating", fallback_rating},
                   {"band_low", band_low},
                   {"band_high", band_high}};
  return sha256_hex(j.dump());
}

namespace {

std::string replace_all(std::string text, const std::string& slot, const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(slot, pos)) != std::string::npos) {
    text.replace(pos, slot.size(), value);
    pos += value.size();
  }
  return text;
}

// First '1', '2' or '3' anywhere in the reply decides the rating.
std::optional<uint32_t> parse_rating(const std::string& text) {
  for (char c : text) {
    if (c >= '1' && c <= '3') return static_cast<uint32_t>(c - '0');
  }
  return std::nullopt;
}

uint32_t mock_rating(double cosine, const RerankerConfig& cfg) {
  if (cosine < cfg.band_low) return 1;
  if (cosine < cfg.band_high) return 2;
  return 3;
}

uint32_t http_rating(const Query& query, const Candidate& cand, const RerankerConfig& cfg,
                     bool* fell_back) {
  const std::string prompt =
      replace_all(replace_all(cfg.prompt_template, "{query}", query.text), "{chunk}",
                  cand.enriched_text);
  const ParsedUrl url = parse_url(cfg.endpoint);
  const std::string payload = nlohmann::json{{"prompt", prompt}}.dump();
  std::string last_error;
  for (uint32_t attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    httplib::Client client(url.base);
    client.set_connection_timeout(0, cfg.timeout_ms * 1000);
    client.set_read_timeout(0, cfg.timeout_ms * 1000);
    auto res = client.Post(url.path, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }
    std::string text;
    try {
      text = nlohmann::json::parse(res->body).at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("bad reply: ") + e.what();
      continue;
    }
    if (auto rating = parse_rating(text)) return *rating;
    last_error = "no rating digit in reply";
  }
  std::cerr << "warning: rating fell back to " << cfg.fallback_rating << " for chunk "
            << cand.video_id << "/" << cand.chunk_id << " (" << last_error << ")\n";
  *fell_back = true;
  return cfg.fallback_rating;
}

}  // namespace

uint32_t score_chunk(const Query& query, const Candidate& cand, const RerankerConfig& cfg,
                     RerankStats* stats) {
  if (stats != nullptr) ++stats->ratings_requested;
  switch (cfg.kind) {
    case RerankerKind::Mock:
      return mock_rating(cand.cosine, cfg);
    case RerankerKind::Http: {
      bool fell_back = false;
      const uint32_t rating = http_rating(query, cand, cfg, &fell_back);
      if (fell_back && stats != nullptr) ++stats->fallbacks_used;
      return rating;
    }
    case RerankerKind::None:
      break;
  }
  throw ConfigError("score_chunk called with reranker kind none");
}

std::vector<uint32_t> rerank_candidates(const Query& query, const std::vector<Candidate>& cands,
                                        const RerankerConfig& cfg, RerankStats* stats) {
  cfg.validate();
  if (cfg.kind == RerankerKind::None) return {};

  std::vector<uint32_t> ratings(cands.size(), 0);
  if (cfg.kind == RerankerKind::Mock || cands.size() <= 1 || cfg.parallelism == 1) {
    for (size_t i = 0; i < cands.size(); ++i) {
      ratings[i] = score_chunk(query, cands[i], cfg, stats);
    }
    return ratings;
  }

  // Bounded fan-out over http: worker threads pull the next index; ratings
  // land by position, so the result does not depend on scheduling.
  std::atomic<size_t> next{0};
  std::atomic<uint64_t> requested{0};
  std::atomic<uint64_t> fallbacks{0};
  const size_t workers = std::min<size_t>(cfg.parallelism, cands.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < cands.size(); i = next.fetch_add(1)) {
        RerankStats local;
        ratings[i] = score_chunk(query, cands[i], cfg, &local);
        requested += local.ratings_requested;
        fallbacks += local.fallbacks_used;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (stats != nullptr) {
    stats->ratings_requested += requested;
    stats->fallbacks_used += fallbacks;
  }
  return ratings;
}

std::vector<VideoScore> aggregate(const std::vector<Candidate>& cands,
                                  const std::vector<uint32_t>& ratings,
                                  const std::vector<std::string>& all_video_ids,
                                  const std::map<std::string, double>& best_seen,
                                  const RerankerConfig& cfg) {
  const bool use_ratings = cfg.kind != RerankerKind::None;
  if (use_ratings && ratings.size() != cands.size()) {
    throw Error("every candidate needs a rating before aggregation");
  }
  std::set<std::string> known;
  for (const auto& id : all_video_ids) {
    if (!known.insert(id).second) throw DuplicateVideoId("duplicate video id: " + id);
  }
  for (const auto& cand : cands) {
    if (!known.count(cand.video_id)) {
      throw UnknownVideoId("candidate references video " + cand.video_id +
                           " which is not in the corpus");
    }
  }

  std::map<std::string, VideoScore> scored;
  for (size_t i = 0; i < cands.size(); ++i) {
    const Candidate& cand = cands[i];
    auto [it, fresh] = scored.try_emplace(cand.video_id);
    VideoScore& vs = it->second;
    if (fresh) {
      vs.video_id = cand.video_id;
      vs.best_cosine = cand.cosine;
      vs.score = use_ratings ? static_cast<double>(ratings[i]) : cand.cosine;
    } else {
      vs.best_cosine = std::max(vs.best_cosine, cand.cosine);
      const double s = use_ratings ? static_cast<double>(ratings[i]) : cand.cosine;
      vs.score = std::max(vs.score, s);  // Score(v) is a max-pool
    }
    if (use_ratings) ++vs.rating_count;
  }

  std::vector<VideoScore> front;
  std::vector<VideoScore> rest;
  for (const auto& id : all_video_ids) {
    auto it = scored.find(id);
    if (it != scored.end()) {
      front.push_back(it->second);
      continue;
    }
    VideoScore vs;
    vs.video_id = id;
    auto seen = best_seen.find(id);
    const double best = seen == best_seen.end() ? -1.0 : seen->second;
    vs.score = best;
    vs.best_cosine = best;
    rest.push_back(std::move(vs));
  }
  std::sort(front.begin(), front.end(), [](const VideoScore& a, const VideoScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.best_cosine != b.best_cosine) return a.best_cosine > b.best_cosine;
    return a.video_id < b.video_id;
  });
  std::sort(rest.begin(), rest.end(), [](const VideoScore& a, const VideoScore& b) {
    if (a.best_cosine != b.best_cosine) return a.best_cosine > b.best_cosine;
    return a.video_id < b.video_id;
  });
  front.insert(front.end(), std::make_move_iterator(rest.begin()),
               std::make_move_iterator(rest.end()));
  return front;
}

}  // namespace vtr
