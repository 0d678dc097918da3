#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vtr/chunker.hpp"
#include "vtr/corpus.hpp"
#include "vtr/embedder.hpp"
#include "vtr/engine.hpp"
#include "vtr/errors.hpp"
#include "vtr/metrics.hpp"
#include "vtr/subtitle_parse.hpp"
#include "vtr/text_normalize.hpp"
#include "vtr/vector_math.hpp"

namespace py = pybind11;

namespace {

py::list lines_to_py(const std::vector<vtr::SubtitleLine>& lines) {
  py::list out;
  for (const auto& line : lines) {
    py::dict d;
    d["index"] = line.index;
    d["text"] = line.text;
    d["start_ms"] = line.start_ms;
    d["end_ms"] = line.end_ms;
    out.append(std::move(d));
  }
  return out;
}

vtr::RunConfig config_from_path(const std::string& config_path) {
  if (config_path.empty()) return vtr::RunConfig{};
  return vtr::RunConfig::load(config_path);
}

// Chunk boundaries over pre-cleaned line texts with the built-in
// deterministic embedder; returns inclusive (first_line, last_line) spans.
std::vector<std::pair<uint32_t, uint32_t>> chunk_spans(const std::vector<std::string>& texts,
                                                       float tau, uint32_t max_chunk_lines,
                                                       uint32_t min_chunk_lines,
                                                       uint32_t dimension) {
  vtr::VideoRecord video;
  video.video_id = "py";
  for (size_t i = 0; i < texts.size(); ++i) {
    vtr::SubtitleLine line;
    line.index = static_cast<uint32_t>(i);
    line.text = texts[i];
    line.start_ms = i * 1000;
    line.end_ms = i * 1000 + 999;
    video.lines.push_back(std::move(line));
  }
  vtr::EmbedderConfig ecfg;
  ecfg.dimension = dimension;
  vtr::HashTrigramEmbedder embedder(ecfg);
  vtr::ChunkerConfig ccfg;
  ccfg.tau = tau;
  ccfg.max_chunk_lines = max_chunk_lines;
  ccfg.min_chunk_lines = min_chunk_lines;
  std::vector<std::pair<uint32_t, uint32_t>> spans;
  for (const vtr::Chunk& chunk : vtr::chunk_video(video, embedder, ccfg)) {
    spans.emplace_back(chunk.first_line, chunk.last_line);
  }
  return spans;
}

py::dict report_to_py(const vtr::EvaluationReport& report) {
  py::dict d;
  d["r_at_1"] = report.r_at.at(1);
  d["r_at_10"] = report.r_at.at(10);
  d["r_at_50"] = report.r_at.at(50);
  d["mrr"] = report.mrr;
  d["overall"] = report.overall;
  d["per_query_rank"] = report.per_query_rank;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vtr, m) {
  m.doc() = "Video corpus retrieval: chunking, tree indexing, pruned search, evaluation";

  py::register_exception<vtr::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<vtr::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("clean_text", &vtr::clean_text, py::arg("text"),
        "NFKC-normalize, strip markup tags and bracketed cues, collapse whitespace");
  m.def("nfkc", &vtr::nfkc, py::arg("text"));
  m.def("nfkc_casefold", &vtr::nfkc_casefold, py::arg("text"));

  m.def(
      "cosine_similarity",
      [](const vtr::EmbeddingVector& a, const vtr::EmbeddingVector& b) {
        return vtr::cosine_similarity(a, b);
      },
      py::arg("a"), py::arg("b"));
  m.def("centroid", &vtr::centroid, py::arg("vectors"));
  m.def("hash_trigram_embed", &vtr::hash_trigram_embed, py::arg("text"), py::arg("dimension"),
        "Deterministic byte-trigram embedding, L2-normalized");

  m.def(
      "parse_srt", [](const std::string& text) { return lines_to_py(vtr::parse_srt(text)); },
      py::arg("text"));
  m.def(
      "parse_vtt", [](const std::string& text) { return lines_to_py(vtr::parse_vtt(text)); },
      py::arg("text"));

  m.def("chunk_spans", &chunk_spans, py::arg("texts"), py::arg("tau") = 0.55f,
        py::arg("max_chunk_lines") = 30, py::arg("min_chunk_lines") = 1,
        py::arg("dimension") = 256);

  m.def("recall_at_n", &vtr::recall_at_n, py::arg("ranks"), py::arg("n"));
  m.def("mean_reciprocal_rank", &vtr::mean_reciprocal_rank, py::arg("ranks"));
  m.def("overall_score", &vtr::overall_score, py::arg("r_at_1"), py::arg("r_at_10"),
        py::arg("r_at_50"), py::arg("mrr"));
  m.def(
      "evaluate_run",
      [](const std::map<std::string, std::vector<std::string>>& ranked, const vtr::Qrels& qrels) {
        return report_to_py(vtr::evaluate_run(ranked, qrels));
      },
      py::arg("ranked_lists"), py::arg("qrels"));

  m.def(
      "build_index",
      [](const std::string& corpus_manifest, const std::string& out_dir,
         const std::string& config_path, bool no_kg, bool flat) {
        vtr::RunConfig cfg = config_from_path(config_path);
        if (no_kg) cfg.enrichment.max_facts = 0;
        if (flat) cfg.index.flat_mode = true;
        vtr::Corpus corpus = vtr::load_corpus(vtr::CorpusManifest::load(corpus_manifest));
        py::list out;
        for (const vtr::BuildSummary& s : vtr::build_index_dir(corpus, cfg, out_dir)) {
          py::dict d;
          d["video_id"] = s.video_id;
          d["chunks"] = s.chunk_count;
          d["nodes"] = s.node_count;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("corpus_manifest"), py::arg("out_dir"), py::arg("config_path") = "",
      py::arg("no_kg") = false, py::arg("flat") = false,
      "Chunk, enrich, embed and index every video of a corpus");

  py::class_<vtr::Engine>(m, "Engine")
      .def(py::init([](const std::string& index_dir, const std::string& config_path) {
             return new vtr::Engine(index_dir, config_from_path(config_path));
           }),
           py::arg("index_dir"), py::arg("config_path") = "")
      .def(
          "query",
          [](vtr::Engine& engine, const std::string& text) {
            vtr::Engine::QueryOutput out = engine.run_query(vtr::Query{"py", text, ""});
            py::list videos;
            for (const vtr::VideoScore& vs : out.ranking) {
              py::dict d;
              d["video_id"] = vs.video_id;
              d["score"] = vs.score;
              d["best_cosine"] = vs.best_cosine;
              videos.append(std::move(d));
            }
            py::list candidates;
            for (size_t i = 0; i < out.candidates.size(); ++i) {
              const vtr::Candidate& c = out.candidates[i];
              py::dict d;
              d["video_id"] = c.video_id;
              d["chunk_id"] = c.chunk_id;
              d["cosine"] = c.cosine;
              d["enriched_text"] = c.enriched_text;
              if (!out.ratings.empty()) d["rating"] = out.ratings[i];
              candidates.append(std::move(d));
            }
            py::dict result;
            result["videos"] = std::move(videos);
            result["candidates"] = std::move(candidates);
            return result;
          },
          py::arg("text"), "Rank all videos for one query")
      .def(
          "evaluate",
          [](vtr::Engine& engine, const std::map<std::string, std::string>& query_texts,
             const vtr::Qrels& qrels) {
            std::vector<vtr::Query> queries;
            queries.reserve(query_texts.size());
            for (const auto& [query_id, text] : query_texts) {
              queries.push_back(vtr::Query{query_id, text, ""});
            }
            return report_to_py(engine.evaluate(queries, qrels).report);
          },
          py::arg("query_texts"), py::arg("qrels"),
          "Run query_texts (query_id -> text) and score against qrels")
      .def_property_readonly("video_ids",
                             [](const vtr::Engine& engine) { return engine.video_ids(); });
}
