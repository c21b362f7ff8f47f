#include "screenbot/rag/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/hash.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::rag {

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("embedding contains a non-finite value");
  }
}

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  double sq = 0.0;
  for (double v : values) sq += v * v;
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : values) v *= inv;
  }
  return EmbeddingVector(std::move(values));
}

double EmbeddingVector::norm() const noexcept {
  double sq = 0.0;
  for (double v : values_) sq += v * v;
  return std::sqrt(sq);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("cosine of vectors with dims " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  const auto& x = a.values();
  const auto& y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    na += x[i] * x[i];
    nb += y[i] * y[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

HashingEmbedder::HashingEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim == 0) throw DomainError("embedding dim must be positive");
}

std::vector<std::string> HashingEmbedder::features(std::string_view input) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (const auto& cp : text::decode(input)) {
    const char32_t c = cp.value;
    if (text::is_space(c) || text::is_punct(c)) {
      flush();
    } else if (text::is_cjk(c)) {
      flush();
      text::append_utf8(current, c);
      flush();
    } else {
      text::append_utf8(current, (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c);
    }
  }
  flush();

  std::vector<std::string> feats;
  feats.reserve(words.size() * 2);
  for (std::size_t i = 0; i < words.size(); ++i) {
    feats.push_back("u:" + words[i]);
    if (i + 1 < words.size()) feats.push_back("b:" + words[i] + "\x1f" + words[i + 1]);
  }
  return feats;
}

EmbeddingVector HashingEmbedder::embed(std::string_view text) {
  std::vector<double> v(dim_, 0.0);
  for (const auto& f : features(text)) {
    const std::uint64_t h = fnv1a64(f, kFnvOffset ^ seed_);
    const std::size_t bucket = static_cast<std::size_t>((h >> 1) % dim_);
    v[bucket] += (h & 1ULL) ? 1.0 : -1.0;
  }
  return EmbeddingVector::normalized(std::move(v));
}

}  // namespace screenbot::rag
