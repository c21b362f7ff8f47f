#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace screenbot::rag {

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  // Throws DomainError on non-finite values.
  explicit EmbeddingVector(std::vector<double> values);

  // Scales to unit L2 norm; an all-zero input stays zero.
  static EmbeddingVector normalized(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }
  double norm() const noexcept;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

// Cosine similarity in [-1, 1]; 0 when either vector is zero. Throws
// DomainError on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(std::string_view text) = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
};

// Deterministic test embedder: lower-cased word unigrams and bigrams (each
// CJK character counts as a word) feature-hashed with a sign bit into `dim`
// buckets, then L2-normalized.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dim = 256, std::uint64_t seed = 0x5eedULL);

  EmbeddingVector embed(std::string_view text) override;
  std::size_t dim() const override { return dim_; }
  std::string name() const override { return "hashing"; }

  static std::vector<std::string> features(std::string_view text);

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

struct RemoteEmbedderConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/embeddings";
  std::string model = "text-embedding-3-small";
  std::string api_key_env = "OPENAI_API_KEY";
  std::size_t dim = 1536;
  int max_attempts = 3;
  std::chrono::milliseconds timeout{15000};
  std::chrono::milliseconds backoff{200};
};

// OpenAI-compatible /v1/embeddings client. Construction throws ConfigError
// when the credential variable is unset; request failures throw
// ProviderError carrying the attempt count and last status.
class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteEmbedderConfig config);

  EmbeddingVector embed(std::string_view text) override;
  std::size_t dim() const override { return config_.dim; }
  std::string name() const override { return "remote:" + config_.model; }

 private:
  RemoteEmbedderConfig config_;
  std::string api_key_;
};

}  // namespace screenbot::rag
