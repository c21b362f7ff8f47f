#include "screenbot/rag/tokenizer.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::rag {

std::vector<TokenSpan> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<TokenSpan> out;
  bool in_token = false;
  std::size_t start = 0;
  for (const auto& cp : text::decode(text)) {
    const bool space = text::is_space(cp.value);
    if (!space && !in_token) {
      in_token = true;
      start = cp.offset;
    } else if (space && in_token) {
      in_token = false;
      out.push_back({start, cp.offset});
    }
  }
  if (in_token) out.push_back({start, text.size()});
  return out;
}

std::shared_ptr<const Tokenizer> make_tokenizer(std::string_view name) {
  if (name == "whitespace") return std::make_shared<WhitespaceTokenizer>();
  throw ConfigError("unknown tokenizer '" + std::string(name) + "'");
}

}  // namespace screenbot::rag
