#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "screenbot/core/clock.hpp"
#include "screenbot/core/language.hpp"

namespace screenbot::llm {

struct AudioBlob {
  std::string mime_type = "audio/mpeg";
  std::vector<std::uint8_t> bytes;
};

class SpeechSynthesizer {
 public:
  virtual ~SpeechSynthesizer() = default;
  // nullopt means "no audio for this turn"; failures throw.
  virtual std::optional<AudioBlob> synthesize(std::string_view text, Language lang) = 0;
  virtual std::string name() const = 0;
};

class NullSpeech final : public SpeechSynthesizer {
 public:
  std::optional<AudioBlob> synthesize(std::string_view, Language) override { return std::nullopt; }
  std::string name() const override { return "null"; }
};

struct RemoteSpeechConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/audio/speech";
  std::string model = "tts-1";
  std::string voice = "alloy";
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds timeout{30000};
};

class RemoteSpeech final : public SpeechSynthesizer {
 public:
  explicit RemoteSpeech(RemoteSpeechConfig config);
  std::optional<AudioBlob> synthesize(std::string_view text, Language lang) override;
  std::string name() const override { return "remote:" + config_.model; }

 private:
  RemoteSpeechConfig config_;
  std::string api_key_;
};

struct SpeechOutcome {
  std::optional<AudioBlob> audio;
  double tts_ms = 0.0;
  bool degraded = false;
  std::string error;
};

// Never throws: empty text skips the provider entirely, and a provider
// failure yields a degraded, audio-less outcome.
SpeechOutcome synthesize_speech(SpeechSynthesizer& synth, std::string_view text, Language lang,
                                Clock& clock);

}  // namespace screenbot::llm
