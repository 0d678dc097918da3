#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vtr/chunker.hpp"
#include "vtr/corpus.hpp"
#include "vtr/engine.hpp"
#include "vtr/errors.hpp"
#include "vtr/metrics.hpp"
#include "vtr/text_normalize.hpp"
#include "vtr/vector_math.hpp"

namespace fs = std::filesystem;

namespace {

vtr::RunConfig load_run_config(const std::string& config_path) {
  if (config_path.empty()) return vtr::RunConfig{};
  return vtr::RunConfig::load(config_path);
}

// HTTP endpoints can be swapped per environment without touching configs.
void apply_env_overrides(vtr::RunConfig* cfg) {
  if (const char* url = std::getenv("ENGINE_EMBED_URL")) cfg->embedder.endpoint = url;
  if (const char* url = std::getenv("ENGINE_LLM_URL")) cfg->rerank.endpoint = url;
}

std::string manifest_path_for(const std::string& corpus) {
  if (fs::is_directory(corpus)) return (fs::path(corpus) / "manifest.json").string();
  return corpus;
}

vtr::Corpus load_corpus_arg(const std::string& corpus) {
  vtr::Corpus loaded = vtr::load_corpus(vtr::CorpusManifest::load(manifest_path_for(corpus)));
  for (const auto& warning : loaded.warnings) std::cerr << "warning: " << warning << "\n";
  return loaded;
}

std::string snippet(const std::string& text) { return vtr::truncate_codepoints(text, 120); }

int cmd_build(const std::string& corpus_path, const std::string& out_dir,
              const std::string& config_path, bool no_kg, bool flat) {
  vtr::RunConfig cfg = load_run_config(config_path);
  apply_env_overrides(&cfg);
  if (no_kg) cfg.enrichment.max_facts = 0;
  if (flat) cfg.index.flat_mode = true;

  vtr::Corpus corpus = load_corpus_arg(corpus_path);
  std::vector<vtr::BuildSummary> summaries = vtr::build_index_dir(corpus, cfg, out_dir);
  for (const auto& s : summaries) {
    std::cout << s.video_id << "\tchunks=" << s.chunk_count << "\tnodes=" << s.node_count
              << "\n";
  }
  std::cerr << "indexed " << summaries.size() << " videos into " << out_dir << "\n";
  return 0;
}

int cmd_query(const std::string& index_dir, const std::string& question, vtr::RunConfig cfg,
              bool as_json) {
  vtr::Engine engine(index_dir, std::move(cfg));
  vtr::Engine::QueryOutput out = engine.run_query(vtr::Query{"cli", question, ""});

  if (as_json) {
    nlohmann::json videos = nlohmann::json::array();
    for (size_t i = 0; i < out.ranking.size(); ++i) {
      const vtr::VideoScore& vs = out.ranking[i];
      videos.push_back({{"rank", i + 1},
                        {"video_id", vs.video_id},
                        {"score", vs.score},
                        {"best_cosine", vs.best_cosine},
                        {"rating_count", vs.rating_count}});
    }
    nlohmann::json candidates = nlohmann::json::array();
    for (size_t i = 0; i < out.candidates.size(); ++i) {
      const vtr::Candidate& c = out.candidates[i];
      nlohmann::json entry{{"rank", i + 1},
                           {"video_id", c.video_id},
                           {"chunk_id", c.chunk_id},
                           {"cosine", c.cosine},
                           {"snippet", snippet(c.enriched_text)}};
      if (!out.ratings.empty()) entry["rating"] = out.ratings[i];
      candidates.push_back(std::move(entry));
    }
    nlohmann::json doc{{"videos", videos},
                       {"candidates", candidates},
                       {"stats",
                        {{"centroid_evals", out.search_stats.centroid_evals},
                         {"leaves_scored", out.search_stats.leaves_scored},
                         {"ratings_requested", out.rerank_stats.ratings_requested},
                         {"fallbacks_used", out.rerank_stats.fallbacks_used}}}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "# videos: rank\tvideo_id\tscore\tbest_cosine\n";
  for (size_t i = 0; i < out.ranking.size(); ++i) {
    const vtr::VideoScore& vs = out.ranking[i];
    std::cout << (i + 1) << "\t" << vs.video_id << "\t" << vtr::fixed6(vs.score) << "\t"
              << vtr::fixed6(vs.best_cosine) << "\n";
  }
  std::cout << "# candidates: rank\tvideo_id\tchunk_id\tcosine\tsnippet\n";
  for (size_t i = 0; i < out.candidates.size(); ++i) {
    const vtr::Candidate& c = out.candidates[i];
    std::cout << (i + 1) << "\t" << c.video_id << "\t" << c.chunk_id << "\t"
              << vtr::fixed6(c.cosine) << "\t" << snippet(c.enriched_text) << "\n";
  }
  return 0;
}

int cmd_evaluate(const std::string& index_dir, const std::string& queries_path,
                 const std::string& qrels_path, const std::string& out_path,
                 vtr::RunConfig cfg) {
  std::vector<vtr::Query> queries = vtr::load_queries_tsv(queries_path);
  vtr::Qrels qrels = vtr::load_qrels_tsv(qrels_path);
  vtr::Engine engine(index_dir, std::move(cfg));
  vtr::Engine::EvaluateOutput out = engine.evaluate(queries, qrels);
  engine.write_report(out, out_path);
  const vtr::EvaluationReport& r = out.report;
  std::cout << "r_at_1=" << vtr::fixed6(r.r_at.at(1)) << " r_at_10=" << vtr::fixed6(r.r_at.at(10))
            << " r_at_50=" << vtr::fixed6(r.r_at.at(50)) << " mrr=" << vtr::fixed6(r.mrr)
            << " overall=" << vtr::fixed6(r.overall) << "\n";
  std::cerr << "report written to " << out_path << "\n";
  return 0;
}

int cmd_chunk(const std::string& corpus_path, const std::string& video_id,
              const std::string& config_path) {
  vtr::RunConfig cfg = load_run_config(config_path);
  apply_env_overrides(&cfg);
  vtr::Corpus corpus = load_corpus_arg(corpus_path);
  std::unique_ptr<vtr::Embedder> embedder = vtr::make_embedder(cfg.embedder);

  bool found = false;
  for (const vtr::VideoRecord& video : corpus.videos) {
    if (!video_id.empty() && video.video_id != video_id) continue;
    found = true;
    if (video.lines.empty()) {
      std::cerr << "warning: video " << video.video_id << " has no lines\n";
      continue;
    }
    std::cout << "# chunks of " << video.video_id << ": chunk_id\tfirst_line\tlast_line\ttext\n";
    for (const vtr::Chunk& chunk : vtr::chunk_video(video, *embedder, cfg.chunker)) {
      std::cout << chunk.chunk_id << "\t" << chunk.first_line << "\t" << chunk.last_line << "\t"
                << snippet(chunk.text) << "\n";
    }
    if (video.lines.size() >= 2) {
      std::cout << "# profile of " << video.video_id << ": after_line\tcosine\n";
      std::vector<double> profile = vtr::similarity_profile(video, *embedder);
      for (size_t k = 0; k < profile.size(); ++k) {
        std::cout << k << "\t" << vtr::fixed6(profile[k]) << "\n";
      }
    }
  }
  if (!video_id.empty() && !found) throw vtr::UnknownVideo("no such video: " + video_id);
  return 0;
}

void dump_node(const vtr::VideoTree& tree, uint32_t node_id, int depth) {
  const vtr::TreeNode& node = tree.nodes[node_id];
  std::cout << std::string(static_cast<size_t>(depth) * 2, ' ');
  if (node.leaf_chunk.has_value()) {
    std::cout << "leaf " << node.node_id << " chunk=" << *node.leaf_chunk;
  } else {
    std::cout << "node " << node.node_id << " |C|=" << node.descendant_count;
  }
  std::cout << " norm=" << vtr::fixed6(vtr::l2_norm(node.centroid)) << "\n";
  for (uint32_t child : node.children) dump_node(tree, child, depth + 1);
}

int cmd_inspect(const std::string& index_dir, const std::string& video_id) {
  vtr::CorpusIndex index = vtr::load_index(index_dir);
  bool found = false;
  for (const vtr::VideoTree& tree : index.trees) {
    if (!video_id.empty() && tree.video_id != video_id) continue;
    found = true;
    std::cout << "video " << tree.video_id << ": chunks=" << tree.chunks.size()
              << " nodes=" << tree.nodes.size() << "\n";
    for (uint32_t root : tree.root_children) dump_node(tree, root, 1);
  }
  if (!video_id.empty() && !found) throw vtr::UnknownVideo("no such video: " + video_id);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Video corpus retrieval over hierarchical per-video chunk trees"};
  app.require_subcommand(1);

  std::string corpus_path, index_dir, out_dir, config_path, question, video_id;
  std::string queries_path, qrels_path, report_path, rerank_mode;
  bool no_kg = false, flat = false, as_json = false;
  double theta = 0.0;
  uint32_t top_m = 0;

  CLI::App* build = app.add_subcommand("build", "Build the index for a corpus");
  build->add_option("--corpus", corpus_path, "Corpus directory or manifest path")->required();
  build->add_option("--out", out_dir, "Index output directory")->required();
  build->add_option("--config", config_path, "JSON run configuration");
  build->add_flag("--no-kg", no_kg, "Skip fact enrichment (sets enrichment cap to 0)");
  build->add_flag("--flat", flat, "Flat index: every chunk directly under the root");

  CLI::App* query = app.add_subcommand("query", "Rank all videos for one question");
  query->add_option("--index", index_dir, "Index directory")->required();
  query->add_option("--question", question, "Query text")->required();
  query->add_option("--config", config_path, "JSON run configuration");
  CLI::Option* theta_opt = query->add_option("--theta", theta, "Pruning threshold override");
  CLI::Option* top_m_opt = query->add_option("--top-m", top_m, "Candidate list size override");
  query->add_option("--rerank", rerank_mode, "Re-ranker: none|mock|http");
  query->add_flag("--json", as_json, "Emit JSON instead of TSV");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a query set against judgments");
  evaluate->add_option("--index", index_dir, "Index directory")->required();
  evaluate->add_option("--queries", queries_path, "queries.tsv (query_id, text, language)")
      ->required();
  evaluate->add_option("--qrels", qrels_path, "qrels.tsv (query_id, video_id)")->required();
  evaluate->add_option("--out", report_path, "Report JSON path")->required();
  evaluate->add_option("--config", config_path, "JSON run configuration");
  CLI::Option* etheta_opt = evaluate->add_option("--theta", theta, "Pruning threshold override");
  CLI::Option* etop_m_opt =
      evaluate->add_option("--top-m", top_m, "Candidate list size override");
  evaluate->add_option("--rerank", rerank_mode, "Re-ranker: none|mock|http");

  CLI::App* chunk = app.add_subcommand("chunk", "Print chunk spans and similarity profile");
  chunk->add_option("--corpus", corpus_path, "Corpus directory or manifest path")->required();
  chunk->add_option("--video", video_id, "Restrict to one video");
  chunk->add_option("--config", config_path, "JSON run configuration");

  CLI::App* inspect = app.add_subcommand("inspect", "Dump index trees as indented text");
  inspect->add_option("--index", index_dir, "Index directory")->required();
  inspect->add_option("--video", video_id, "Restrict to one video");

  try {
    app.parse(argc, argv);

    if (build->parsed()) return cmd_build(corpus_path, out_dir, config_path, no_kg, flat);

    if (query->parsed() || evaluate->parsed()) {
      vtr::RunConfig cfg = load_run_config(config_path);
      apply_env_overrides(&cfg);
      if (theta_opt->count() > 0 || etheta_opt->count() > 0) cfg.search.theta = theta;
      if (top_m_opt->count() > 0 || etop_m_opt->count() > 0) cfg.search.top_m = top_m;
      if (!rerank_mode.empty()) cfg.rerank.kind = vtr::reranker_kind_from_string(rerank_mode);
      if (query->parsed()) return cmd_query(index_dir, question, std::move(cfg), as_json);
      return cmd_evaluate(index_dir, queries_path, qrels_path, report_path, std::move(cfg));
    }

    if (chunk->parsed()) return cmd_chunk(corpus_path, video_id, config_path);
    if (inspect->parsed()) return cmd_inspect(index_dir, video_id);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const vtr::ManifestMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
