#include "screenbot/rag/retrieval.hpp"

#include <future>

#include "screenbot/rag/chunker.hpp"

namespace screenbot::rag {

bool RetrievalBundle::empty() const noexcept {
  for (const auto& s : sections) {
    if (!s.hits.empty()) return false;
  }
  return true;
}

bool RetrievalBundle::degraded() const noexcept {
  for (const auto& s : sections) {
    if (s.error) return true;
  }
  return false;
}

nlohmann::json to_json(const RetrievalBundle& bundle) {
  auto sections = nlohmann::json::array();
  for (const auto& s : bundle.sections) {
    auto hits = nlohmann::json::array();
    for (const auto& h : s.hits) {
      hits.push_back({{"chunk", to_json(h.chunk)}, {"score", h.score}, {"store", h.store_name}});
    }
    nlohmann::json section{{"store", s.store_name}, {"hits", std::move(hits)}};
    if (s.error) section["error"] = *s.error;
    sections.push_back(std::move(section));
  }
  return {{"sections", std::move(sections)}};
}

Retriever::Retriever(std::shared_ptr<Embedder> embedder,
                     std::vector<std::shared_ptr<const SearchableStore>> stores)
    : embedder_(std::move(embedder)), stores_(std::move(stores)) {}

RetrievalBundle Retriever::query_stores(std::string_view query_text, std::size_t k_per_store) const {
  RetrievalBundle bundle;
  bundle.sections.reserve(stores_.size());
  for (const auto& s : stores_) bundle.sections.push_back({s->name(), {}, std::nullopt});

  EmbeddingVector query;
  try {
    query = embedder_->embed(query_text);
  } catch (const std::exception& e) {
    for (auto& s : bundle.sections) s.error = std::string("embedding failed: ") + e.what();
    return bundle;
  }

  std::vector<std::future<std::vector<ScoredChunk>>> pending;
  pending.reserve(stores_.size());
  for (const auto& store : stores_) {
    pending.push_back(std::async(std::launch::async, [store, &query, k_per_store] {
      return store->query(query, k_per_store);
    }));
  }
  // Joined by index, so completion order never changes section order.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    try {
      bundle.sections[i].hits = pending[i].get();
    } catch (const std::exception& e) {
      bundle.sections[i].error = e.what();
    }
  }
  return bundle;
}

}  // namespace screenbot::rag
