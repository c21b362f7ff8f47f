#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "screenbot/rag/document.hpp"
#include "screenbot/rag/tokenizer.hpp"

namespace screenbot::rag {

struct Chunk {
  std::string doc_id;
  int seq = 0;
  // Token range [token_start, token_end) within the document.
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string text;

  bool operator==(const Chunk&) const = default;
};

nlohmann::json to_json(const Chunk& chunk);
Chunk chunk_from_json(const nlohmann::json& j);

struct ChunkingOptions {
  std::size_t chunk_tokens = 512;
  double overlap_ratio = 0.2;

  std::size_t overlap_tokens() const;
  // chunk_tokens - overlap_tokens, at least 1.
  std::size_t stride() const;
};

// Sliding token windows: window i covers [i*stride, min(i*stride + chunk_tokens, n)),
// stopping once a window reaches the last token. The first chunk's text
// starts at byte 0 and the last chunk's runs to the end of the text, so a
// single-window document round-trips verbatim.
std::vector<Chunk> chunk_document(const Document& doc, const Tokenizer& tokenizer,
                                  const ChunkingOptions& options = {});

}  // namespace screenbot::rag
