#include "vtr/kg.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "vtr/digest.hpp"
#include "vtr/errors.hpp"
#include "vtr/text_normalize.hpp"

namespace vtr {

std::string EnrichmentConfig::config_hash() const {
  nlohmann::json j{{"max_facts", max_facts}};
  return sha256_hex(j.dump());
}

bool TripleStore::surface_order(const std::string& a, const std::string& b) {
  size_t la = codepoint_length(a);
  size_t lb = codepoint_length(b);
  if (la != lb) return la > lb;
  return a < b;
}

void TripleStore::add_video(const std::string& video_id) { videos_[video_id]; }

void TripleStore::add_triple(const std::string& video_id, KGTriple triple) {
  VideoEntry& entry = videos_[video_id];
  for (const auto& existing : entry.triples) {
    if (existing == triple) return;  // duplicates collapse to the first occurrence
  }
  uint32_t idx = static_cast<uint32_t>(entry.triples.size());
  std::string subj_key = nfkc_casefold(triple.subject);
  std::string obj_key = nfkc_casefold(triple.object);
  entry.triples.push_back(std::move(triple));
  for (const auto& [key, as_subject] :
       {std::pair{subj_key, true}, std::pair{obj_key, false}}) {
    if (key.empty()) continue;
    auto [it, inserted] = entry.surface_refs.try_emplace(key);
    it->second.push_back({idx, as_subject});
    if (inserted) {
      auto pos = std::lower_bound(entry.surfaces_by_length.begin(),
                                  entry.surfaces_by_length.end(), key, surface_order);
      entry.surfaces_by_length.insert(pos, key);
    }
  }
}

bool TripleStore::has_video(const std::string& video_id) const {
  return videos_.count(video_id) != 0;
}

const std::vector<KGTriple>& TripleStore::triples_for(const std::string& video_id) const {
  auto it = videos_.find(video_id);
  if (it == videos_.end()) throw UnknownVideo("no triples loaded for video: " + video_id);
  return it->second.triples;
}

const std::vector<std::string>& TripleStore::surfaces_for(const std::string& video_id) const {
  static const std::vector<std::string> empty;
  auto it = videos_.find(video_id);
  return it == videos_.end() ? empty : it->second.surfaces_by_length;
}

const std::vector<TripleStore::SurfaceRef>& TripleStore::refs_for(
    const std::string& video_id, const std::string& surface) const {
  static const std::vector<SurfaceRef> empty;
  auto it = videos_.find(video_id);
  if (it == videos_.end()) return empty;
  auto ref_it = it->second.surface_refs.find(surface);
  return ref_it == it->second.surface_refs.end() ? empty : ref_it->second;
}

size_t TripleStore::triple_count(const std::string& video_id) const {
  auto it = videos_.find(video_id);
  return it == videos_.end() ? 0 : it->second.triples.size();
}

namespace {

bool contains_cjk(const std::string& text) {
  for (const CodePoint& p : decode_utf8(text)) {
    if (is_cjk(p.cp)) return true;
  }
  return false;
}

// A neighbor blocks a word-bounded match only when it could extend the
// word: alphanumeric and not CJK (scripts without spaces bound words by
// script change).
bool is_boundary(int32_t cp) { return !is_word_char(cp) || is_cjk(cp); }

}  // namespace

std::vector<std::string> match_entities(const Chunk& chunk, const TripleStore& store) {
  const std::vector<std::string>& surfaces = store.surfaces_for(chunk.video_id);
  if (surfaces.empty()) return {};

  const std::string text = nfkc_casefold(chunk.text);
  const std::vector<CodePoint> cps = decode_utf8(text);

  struct SurfaceInfo {
    const std::string* surface;
    size_t cp_len;
    bool cjk;
  };
  std::vector<SurfaceInfo> infos;
  infos.reserve(surfaces.size());
  for (const auto& s : surfaces) {
    infos.push_back({&s, codepoint_length(s), contains_cjk(s)});
  }

  std::vector<std::string> matches;
  std::set<std::string> seen;
  size_t pos = 0;
  while (pos < cps.size()) {
    const SurfaceInfo* hit = nullptr;
    for (const auto& info : infos) {  // longest first
      if (info.cp_len == 0 || pos + info.cp_len > cps.size()) continue;
      size_t start_byte = cps[pos].byte_offset;
      size_t end_byte = pos + info.cp_len < cps.size() ? cps[pos + info.cp_len].byte_offset
                                                       : text.size();
      if (text.compare(start_byte, end_byte - start_byte, *info.surface) != 0) continue;
      if (!info.cjk) {
        if (pos > 0 && !is_boundary(cps[pos - 1].cp)) continue;
        if (pos + info.cp_len < cps.size() && !is_boundary(cps[pos + info.cp_len].cp)) continue;
      }
      hit = &info;
      break;
    }
    if (hit != nullptr) {
      if (seen.insert(*hit->surface).second) matches.push_back(*hit->surface);
      pos += hit->cp_len;
    } else {
      ++pos;
    }
  }
  return matches;
}

std::vector<KGTriple> retrieve_triples(const std::string& entity, const std::string& video_id,
                                       const TripleStore& store) {
  const std::vector<KGTriple>& triples = store.triples_for(video_id);  // throws UnknownVideo
  const std::string key = nfkc_casefold(entity);
  std::vector<uint32_t> indices;
  for (const auto& ref : store.refs_for(video_id, key)) indices.push_back(ref.triple_index);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  std::vector<KGTriple> out;
  out.reserve(indices.size());
  for (uint32_t idx : indices) out.push_back(triples[idx]);
  return out;
}

std::string render_fact(const KGTriple& triple) {
  std::string relation = triple.relation;
  std::replace(relation.begin(), relation.end(), '_', ' ');
  std::string fact = triple.subject + " " + relation + " " + triple.object + ".";
  if (!triple.subject_type.empty()) {
    fact += " " + triple.subject + " is a " + triple.subject_type + ".";
  }
  if (!triple.object_type.empty()) {
    fact += " " + triple.object + " is a " + triple.object_type + ".";
  }
  return fact;
}

EnrichedChunk enrich_chunk(const Chunk& chunk, const TripleStore& store,
                           const EnrichmentConfig& config) {
  EnrichedChunk out;
  out.base = chunk;
  out.enriched_text = chunk.text;
  if (config.max_facts == 0 || !store.has_video(chunk.video_id)) return out;

  out.entities = match_entities(chunk, store);
  std::set<std::string> seen;
  for (const auto& entity : out.entities) {
    if (out.facts.size() >= config.max_facts) break;
    for (const auto& triple : retrieve_triples(entity, chunk.video_id, store)) {
      std::string fact = render_fact(triple);
      if (!seen.insert(fact).second) continue;
      out.facts.push_back(std::move(fact));
      if (out.facts.size() >= config.max_facts) break;
    }
  }
  for (const auto& fact : out.facts) {
    out.enriched_text += " " + fact;
  }
  return out;
}

}  // namespace vtr
