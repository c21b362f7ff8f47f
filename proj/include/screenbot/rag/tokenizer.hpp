#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace screenbot::rag {

// Half-open byte range of one token in the source text.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<TokenSpan> tokenize(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

// Maximal runs of non-whitespace (ASCII and Unicode spaces).
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::vector<TokenSpan> tokenize(std::string_view text) const override;
  std::string name() const override { return "whitespace"; }
};

// Throws ConfigError for unknown names.
std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view name);

}  // namespace screenbot::rag
