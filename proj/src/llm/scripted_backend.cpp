#include <thread>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/text.hpp"
#include "screenbot/llm/backend.hpp"

namespace screenbot::llm {

std::vector<std::string> split_codepoints(std::string_view text, std::size_t per_chunk) {
  if (per_chunk == 0) per_chunk = 1;
  std::vector<std::string> out;
  const auto cps = text::decode(text);
  for (std::size_t i = 0; i < cps.size(); i += per_chunk) {
    const std::size_t j = std::min(cps.size(), i + per_chunk) - 1;
    const std::size_t begin = cps[i].offset;
    const std::size_t end = cps[j].offset + cps[j].length;
    out.emplace_back(text.substr(begin, end - begin));
  }
  return out;
}

int approx_token_count(std::string_view text) {
  int count = 0;
  bool in_word = false;
  for (const auto& cp : text::decode(text)) {
    if (text::is_cjk(cp.value)) {
      ++count;
      in_word = false;
    } else if (text::is_space(cp.value)) {
      in_word = false;
    } else if (!in_word) {
      ++count;
      in_word = true;
    }
  }
  return count;
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> replies, ScriptedBackendOptions options)
    : replies_(std::move(replies)), options_(options) {}

BackendReply ScriptedBackend::generate(const PromptBundle& prompt, const ChunkSink& sink,
                                       const CancelToken& cancel) {
  std::string reply;
  {
    std::lock_guard lock(mu_);
    prompts_.push_back(prompt);
    if (next_ >= replies_.size()) {
      if (!options_.cycle || replies_.empty()) {
        throw ScriptExhaustedError("scripted backend exhausted after " +
                                   std::to_string(replies_.size()) + " replies");
      }
      next_ = 0;
    }
    reply = replies_[next_++];
  }
  if (options_.delay.count() > 0) std::this_thread::sleep_for(options_.delay);

  BackendReply out;
  out.chunks = split_codepoints(reply, options_.chunk_codepoints);
  for (const auto& c : out.chunks) {
    if (cancel.cancelled()) throw CancelledError("generation cancelled");
    if (sink) sink(c);
    out.text += c;
  }
  out.token_count = approx_token_count(out.text);
  return out;
}

std::size_t ScriptedBackend::consumed() const {
  std::lock_guard lock(mu_);
  return next_;
}

std::vector<PromptBundle> ScriptedBackend::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

}  // namespace screenbot::llm
