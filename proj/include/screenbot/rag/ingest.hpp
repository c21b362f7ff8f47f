#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "screenbot/core/language.hpp"
#include "screenbot/rag/chunker.hpp"
#include "screenbot/rag/embedding.hpp"
#include "screenbot/rag/tokenizer.hpp"
#include "screenbot/rag/vector_store.hpp"

namespace screenbot::rag {

struct IngestOptions {
  Language default_lang = Language::English;
  ChunkingOptions chunking{};
};

struct IngestReport {
  std::size_t documents = 0;
  std::size_t chunks = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Reads `path` (a .txt/.jsonl file or a directory of them, recursively in
// sorted order), chunks, embeds and adds every document to `store`.
// Re-ingesting a doc_id replaces its previous chunks. Malformed records and
// records whose source_kind belongs to another store are skipped with a
// warning.
IngestReport ingest(const std::filesystem::path& path, VectorStore& store, Embedder& embedder,
                    const Tokenizer& tokenizer, const IngestOptions& options = {});

}  // namespace screenbot::rag
