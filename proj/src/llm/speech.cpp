#include "screenbot/llm/speech.hpp"

#include <json.hpp>

#include "../core/http_support.hpp"

namespace screenbot::llm {

RemoteSpeech::RemoteSpeech(RemoteSpeechConfig config)
    : config_(std::move(config)), api_key_(detail::require_env(config_.api_key_env)) {}

std::optional<AudioBlob> RemoteSpeech::synthesize(std::string_view text, Language lang) {
  (void)lang;  // the provider detects the language from the text
  auto client = detail::make_http_client(config_.base_url, config_.timeout);
  const nlohmann::json body{{"model", config_.model},
                            {"voice", config_.voice},
                            {"input", std::string(text)},
                            {"response_format", "mp3"}};
  const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
  auto res = client->Post(config_.path, headers, body.dump(), "application/json");
  if (!res) throw ProviderError("speech request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw ProviderError("speech request failed: HTTP " + std::to_string(res->status), 1,
                        res->status);
  }
  if (res->body.empty()) throw ProviderError("speech provider returned no audio", 1, 200);
  AudioBlob blob;
  blob.mime_type = res->get_header_value("Content-Type");
  if (blob.mime_type.empty()) blob.mime_type = "audio/mpeg";
  blob.bytes.assign(res->body.begin(), res->body.end());
  return blob;
}

SpeechOutcome synthesize_speech(SpeechSynthesizer& synth, std::string_view text, Language lang,
                                Clock& clock) {
  SpeechOutcome out;
  if (text.empty()) return out;
  const auto start = clock.mono_now();
  try {
    out.audio = synth.synthesize(text, lang);
  } catch (const std::exception& e) {
    out.audio.reset();
    out.degraded = true;
    out.error = e.what();
  }
  const auto us =
      std::chrono::duration_cast<std::chrono::microseconds>(clock.mono_now() - start).count();
  // The null provider does no work, so it reports no time.
  out.tts_ms = (out.audio || out.degraded) ? static_cast<double>(us) / 1000.0 : 0.0;
  return out;
}

}  // namespace screenbot::llm
