#include "screenbot/rag/chunker.hpp"

#include <algorithm>
#include <cmath>

#include "screenbot/core/errors.hpp"

namespace screenbot::rag {

nlohmann::json to_json(const Chunk& c) {
  return {{"doc_id", c.doc_id},
          {"seq", c.seq},
          {"token_start", c.token_start},
          {"token_end", c.token_end},
          {"text", c.text}};
}

Chunk chunk_from_json(const nlohmann::json& j) {
  Chunk c;
  c.doc_id = j.at("doc_id").get<std::string>();
  c.seq = j.at("seq").get<int>();
  c.token_start = j.at("token_start").get<std::size_t>();
  c.token_end = j.at("token_end").get<std::size_t>();
  c.text = j.at("text").get<std::string>();
  return c;
}

std::size_t ChunkingOptions::overlap_tokens() const {
  return static_cast<std::size_t>(std::floor(overlap_ratio * static_cast<double>(chunk_tokens)));
}

std::size_t ChunkingOptions::stride() const {
  const std::size_t overlap = overlap_tokens();
  return overlap >= chunk_tokens ? 1 : chunk_tokens - overlap;
}

std::vector<Chunk> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                  const ChunkingOptions& options) {
  if (options.chunk_tokens == 0) throw DomainError("chunk_tokens must be positive");
  if (!(options.overlap_ratio >= 0.0 && options.overlap_ratio < 1.0)) {
    throw DomainError("overlap_ratio must be in [0, 1)");
  }
  const auto tokens = tokenizer.tokenize(doc.text);
  std::vector<Chunk> out;
  if (tokens.empty()) return out;

  const std::size_t n = tokens.size();
  const std::size_t stride = options.stride();
  for (std::size_t start = 0;; start += stride) {
    const std::size_t end = std::min(start + options.chunk_tokens, n);
    const std::size_t byte_begin = start == 0 ? 0 : tokens[start].begin;
    const std::size_t byte_end = end == n ? doc.text.size() : tokens[end - 1].end;
    out.push_back({doc.doc_id, static_cast<int>(out.size()), start, end,
                   doc.text.substr(byte_begin, byte_end - byte_begin)});
    if (end == n) break;
  }
  return out;
}

}  // namespace screenbot::rag
