#pragma once

#include <memory>

#include "screenbot/core/clock.hpp"
#include "screenbot/dialogue/engine.hpp"
#include "screenbot/dialogue/session_log.hpp"
#include "screenbot/dialogue/session_manager.hpp"
#include "screenbot/llm/gateway.hpp"
#include "screenbot/llm/speech.hpp"
#include "screenbot/rag/retrieval.hpp"
#include "screenbot/rag/vector_store.hpp"
#include "screenbot/safety/safety_guard.hpp"
#include "screenbot/service/config.hpp"

namespace screenbot::service {

// Everything a running service needs, wired from a config.
struct Runtime {
  ServiceConfig config;
  std::shared_ptr<Clock> clock;
  std::shared_ptr<const phq9::Instrument> instrument;
  std::shared_ptr<safety::ReloadableSafetyGuard> safety;
  std::shared_ptr<rag::Embedder> embedder;
  std::shared_ptr<rag::StoreSet> stores;
  std::shared_ptr<const rag::Retriever> retriever;
  std::shared_ptr<llm::ChatBackend> backend;
  std::shared_ptr<llm::LlmGateway> gateway;
  std::shared_ptr<llm::SpeechSynthesizer> speech;
  std::shared_ptr<dialogue::DialogueEngine> engine;
  std::shared_ptr<dialogue::SessionLog> log;
  std::shared_ptr<dialogue::SessionManager> sessions;
};

std::shared_ptr<rag::Embedder> make_embedder(const ServiceConfig& config);

// Loads every store snapshot that exists; missing snapshots give empty
// stores.
std::shared_ptr<rag::StoreSet> load_stores(const ServiceConfig& config,
                                           std::shared_ptr<rag::Embedder> embedder);

Runtime build_runtime(const ServiceConfig& config, std::shared_ptr<Clock> clock = nullptr);

}  // namespace screenbot::service
