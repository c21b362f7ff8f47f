#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "screenbot/rag/embedding.hpp"
#include "screenbot/rag/vector_store.hpp"

namespace screenbot::rag {

struct StoreSection {
  std::string store_name;
  std::vector<ScoredChunk> hits;  // scores non-increasing
  std::optional<std::string> error;
};

struct RetrievalBundle {
  // One section per configured store, always in configured order.
  std::vector<StoreSection> sections;

  bool empty() const noexcept;
  bool degraded() const noexcept;
};

nlohmann::json to_json(const RetrievalBundle& bundle);

// Fans a query out to every store concurrently and joins the results in
// configured order. A failing store yields a section with `error` set; the
// call itself does not throw.
class Retriever {
 public:
  Retriever(std::shared_ptr<Embedder> embedder,
            std::vector<std::shared_ptr<const SearchableStore>> stores);

  RetrievalBundle query_stores(std::string_view query_text, std::size_t k_per_store = 3) const;

  std::size_t store_count() const noexcept { return stores_.size(); }

 private:
  std::shared_ptr<Embedder> embedder_;
  std::vector<std::shared_ptr<const SearchableStore>> stores_;
};

}  // namespace screenbot::rag
