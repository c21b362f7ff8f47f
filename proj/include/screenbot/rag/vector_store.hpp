#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "screenbot/rag/chunker.hpp"
#include "screenbot/rag/embedding.hpp"

namespace screenbot::rag {

struct ScoredChunk {
  Chunk chunk;
  double score = 0.0;
  std::string store_name;
};

// Read side of a store; query() must be safe to call concurrently.
class SearchableStore {
 public:
  virtual ~SearchableStore() = default;
  virtual const std::string& name() const = 0;
  virtual std::vector<ScoredChunk> query(const EmbeddingVector& query_vec, std::size_t k) const = 0;
};

// Flat in-memory cosine index. Mutation is single-writer; once built, any
// number of threads may query.
class VectorStore final : public SearchableStore {
 public:
  explicit VectorStore(std::string name) : name_(std::move(name)) {}

  const std::string& name() const override { return name_; }
  std::size_t size() const noexcept { return entries_.size(); }
  // 0 while empty.
  std::size_t dim() const noexcept { return dim_; }

  // Throws DomainError on size or dimension mismatch.
  std::size_t add(std::vector<Chunk> chunks, std::vector<EmbeddingVector> vectors);
  std::size_t add(std::vector<Chunk> chunks, Embedder& embedder);

  // Drops every chunk of `doc_id`; returns how many were removed.
  std::size_t remove_document(std::string_view doc_id);

  // Top-k by cosine; equal scores keep insertion order. Throws DomainError
  // for k == 0 or a dimension mismatch with a non-empty store.
  std::vector<ScoredChunk> query(const EmbeddingVector& query_vec, std::size_t k) const override;

  // JSONL, one {"chunk": {...}, "vector": [...]} per line.
  void save_snapshot(const std::filesystem::path& path) const;
  static VectorStore load_snapshot(const std::filesystem::path& path, std::string name);

 private:
  struct Entry {
    Chunk chunk;
    EmbeddingVector vector;
  };

  std::string name_;
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

// Named stores sharing one embedder.
class StoreSet {
 public:
  explicit StoreSet(std::shared_ptr<Embedder> embedder);

  // Creates the store if missing.
  VectorStore& create(const std::string& name);
  void insert(VectorStore store);

  // Embeds and appends; throws NotFoundError for an unknown store.
  std::size_t store_add(std::string_view store_name, std::vector<Chunk> chunks);
  std::vector<ScoredChunk> store_query(std::string_view store_name, const EmbeddingVector& query_vec,
                                       std::size_t k) const;

  const VectorStore& at(std::string_view name) const;
  VectorStore& at(std::string_view name);
  bool contains(std::string_view name) const;

  std::shared_ptr<Embedder> embedder() const { return embedder_; }

  // The three stores in bundle order, as shared read-only handles.
  std::vector<std::shared_ptr<const SearchableStore>> ordered() const;

 private:
  std::shared_ptr<Embedder> embedder_;
  std::map<std::string, std::shared_ptr<VectorStore>, std::less<>> stores_;
};

}  // namespace screenbot::rag
