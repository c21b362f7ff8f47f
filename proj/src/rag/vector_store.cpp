#include "screenbot/rag/vector_store.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "screenbot/core/errors.hpp"

namespace screenbot::rag {

std::size_t VectorStore::add(std::vector<Chunk> chunks, std::vector<EmbeddingVector> vectors) {
  if (chunks.size() != vectors.size()) {
    throw DomainError("store_add: " + std::to_string(chunks.size()) + " chunks but " +
                      std::to_string(vectors.size()) + " vectors");
  }
  for (const auto& v : vectors) {
    const std::size_t want = dim_ == 0 ? vectors.front().dim() : dim_;
    if (v.dim() == 0 || v.dim() != want) {
      throw DomainError("store '" + name_ + "': vector dim " + std::to_string(v.dim()) +
                        " does not match " + std::to_string(want));
    }
  }
  if (!vectors.empty() && dim_ == 0) dim_ = vectors.front().dim();
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    entries_.push_back({std::move(chunks[i]), std::move(vectors[i])});
  }
  return chunks.size();
}

std::size_t VectorStore::add(std::vector<Chunk> chunks, Embedder& embedder) {
  std::vector<EmbeddingVector> vectors;
  vectors.reserve(chunks.size());
  for (const auto& c : chunks) vectors.push_back(embedder.embed(c.text));
  return add(std::move(chunks), std::move(vectors));
}

std::size_t VectorStore::remove_document(std::string_view doc_id) {
  const auto before = entries_.size();
  std::erase_if(entries_, [&](const Entry& e) { return e.chunk.doc_id == doc_id; });
  return before - entries_.size();
}

std::vector<ScoredChunk> VectorStore::query(const EmbeddingVector& query_vec, std::size_t k) const {
  if (k == 0) throw DomainError("store_query: k must be at least 1");
  if (entries_.empty()) return {};
  if (query_vec.dim() != dim_) {
    throw DomainError("store '" + name_ + "': query dim " + std::to_string(query_vec.dim()) +
                      " does not match " + std::to_string(dim_));
  }
  std::vector<double> scores(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) scores[i] = cosine(query_vec, entries_[i].vector);

  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
                    });
  std::vector<ScoredChunk> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({entries_[order[i]].chunk, scores[order[i]], name_});
  }
  return out;
}

void VectorStore::save_snapshot(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write snapshot " + tmp);
    for (const auto& e : entries_) {
      out << nlohmann::json{{"chunk", to_json(e.chunk)}, {"vector", e.vector.values()}}.dump()
          << '\n';
    }
    if (!out) throw DataError("failed writing snapshot " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

VectorStore VectorStore::load_snapshot(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open snapshot " + path.string());
  VectorStore store(std::move(name));
  std::string line;
  std::size_t lineno = 0;
  std::vector<Chunk> chunks;
  std::vector<EmbeddingVector> vectors;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      chunks.push_back(chunk_from_json(j.at("chunk")));
      vectors.emplace_back(j.at("vector").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  store.add(std::move(chunks), std::move(vectors));
  return store;
}

StoreSet::StoreSet(std::shared_ptr<Embedder> embedder) : embedder_(std::move(embedder)) {
  for (auto name : kStoreOrder) create(std::string(name));
}

VectorStore& StoreSet::create(const std::string& name) {
  auto it = stores_.find(name);
  if (it == stores_.end()) it = stores_.emplace(name, std::make_shared<VectorStore>(name)).first;
  return *it->second;
}

void StoreSet::insert(VectorStore store) {
  const std::string name = store.name();
  stores_[name] = std::make_shared<VectorStore>(std::move(store));
}

bool StoreSet::contains(std::string_view name) const { return stores_.find(name) != stores_.end(); }

const VectorStore& StoreSet::at(std::string_view name) const {
  auto it = stores_.find(name);
  if (it == stores_.end()) throw NotFoundError("unknown store '" + std::string(name) + "'");
  return *it->second;
}

VectorStore& StoreSet::at(std::string_view name) {
  auto it = stores_.find(name);
  if (it == stores_.end()) throw NotFoundError("unknown store '" + std::string(name) + "'");
  return *it->second;
}

std::size_t StoreSet::store_add(std::string_view store_name, std::vector<Chunk> chunks) {
  return at(store_name).add(std::move(chunks), *embedder_);
}

std::vector<ScoredChunk> StoreSet::store_query(std::string_view store_name,
                                               const EmbeddingVector& query_vec,
                                               std::size_t k) const {
  return at(store_name).query(query_vec, k);
}

std::vector<std::shared_ptr<const SearchableStore>> StoreSet::ordered() const {
  std::vector<std::shared_ptr<const SearchableStore>> out;
  for (auto name : kStoreOrder) out.push_back(stores_.find(name)->second);
  return out;
}

}  // namespace screenbot::rag
