#include "screenbot/service/runtime.hpp"

#include "screenbot/core/errors.hpp"
#include "screenbot/rag/document.hpp"

namespace screenbot::service {

std::shared_ptr<rag::Embedder> make_embedder(const ServiceConfig& config) {
  if (config.embedder == EmbedderKind::Remote) {
    return std::make_shared<rag::RemoteEmbedder>(config.remote_embedder);
  }
  return std::make_shared<rag::HashingEmbedder>(config.hashing_dim);
}

std::shared_ptr<rag::StoreSet> load_stores(const ServiceConfig& config,
                                           std::shared_ptr<rag::Embedder> embedder) {
  auto stores = std::make_shared<rag::StoreSet>(embedder);
  for (const auto& name : rag::kStoreOrder) {
    const auto path = config.store_snapshot(std::string(name));
    if (!std::filesystem::exists(path)) continue;
    auto store = rag::VectorStore::load_snapshot(path, std::string(name));
    if (store.size() > 0 && store.dim() != embedder->dim()) {
      throw ConfigError("store " + std::string(name) + " has dim " + std::to_string(store.dim()) +
                        " but the embedder produces " + std::to_string(embedder->dim()));
    }
    stores->insert(std::move(store));
  }
  return stores;
}

Runtime build_runtime(const ServiceConfig& config, std::shared_ptr<Clock> clock) {
  config.validate();
  Runtime rt;
  rt.config = config;
  rt.clock = clock ? std::move(clock) : std::make_shared<SystemClock>();
  rt.instrument = std::make_shared<const phq9::Instrument>(
      phq9::Instrument::load(config.instrument_path));
  rt.safety = std::make_shared<safety::ReloadableSafetyGuard>(safety::SafetyPaths{
      config.lexicon_path, config.helplines_path, config.crisis_messages_path});

  rt.embedder = make_embedder(config);
  rt.stores = load_stores(config, rt.embedder);
  rt.retriever = std::make_shared<const rag::Retriever>(rt.embedder, rt.stores->ordered());

  if (config.backend == BackendKind::Remote) {
    rt.backend = std::make_shared<llm::RemoteChatBackend>(config.remote_backend);
  } else {
    rt.backend = std::make_shared<llm::ScriptedBackend>(config.scripted_replies, config.scripted);
  }
  rt.gateway = std::make_shared<llm::LlmGateway>(rt.backend, rt.clock, config.max_in_flight);

  if (config.speech == SpeechKind::Remote) {
    rt.speech = std::make_shared<llm::RemoteSpeech>(config.remote_speech);
  } else {
    rt.speech = std::make_shared<llm::NullSpeech>();
  }

  std::shared_ptr<dialogue::TransitionPolicy> policy;
  if (config.policy == PolicyKind::Llm) {
    policy = std::make_shared<dialogue::LlmReadinessPolicy>(rt.gateway, config.transcript_window);
  } else {
    policy = std::make_shared<dialogue::TokenTransitionPolicy>(config.policy_token);
  }

  dialogue::EngineConfig ec;
  ec.transcript_window = config.transcript_window;
  ec.k_per_store = config.k_per_store;
  rt.engine = std::make_shared<dialogue::DialogueEngine>(
      dialogue::EngineDeps{rt.instrument, dialogue::reloadable_safety(rt.safety), rt.gateway,
                           rt.retriever, policy, rt.clock},
      ec);
  rt.log = std::make_shared<dialogue::SessionLog>(config.session_dir);
  rt.sessions = std::make_shared<dialogue::SessionManager>(rt.engine, rt.log, rt.speech, rt.clock,
                                                           config.idle_limit);
  return rt;
}

}  // namespace screenbot::service
