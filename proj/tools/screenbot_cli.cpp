// Command-line entry point: serve, ingest, stats and replay.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/language.hpp"
#include "screenbot/dialogue/session_log.hpp"
#include "screenbot/dialogue/session_state.hpp"
#include "screenbot/rag/ingest.hpp"
#include "screenbot/rag/tokenizer.hpp"
#include "screenbot/service/config.hpp"
#include "screenbot/service/runtime.hpp"
#include "screenbot/service/server.hpp"
#include "screenbot/service/wire.hpp"
#include "screenbot/stats/records.hpp"
#include "screenbot/stats/report.hpp"

namespace fs = std::filesystem;
using namespace screenbot;

namespace {

fs::path data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SCREENBOT_DATA_DIR"); env && *env) return env;
  return SCREENBOT_DATA_DIR;
}

service::ServiceConfig config_for(const std::string& path, const fs::path& data) {
  if (path.empty()) return service::default_config(data);
  return service::load_config(path, data);
}

void emit(const nlohmann::json& j, const std::string& out) {
  const auto text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write " + out);
  f << text;
  if (!f.flush()) throw DataError("cannot write " + out);
}

int serve(const std::string& config_path, const fs::path& data) {
  // Block termination signals before any thread starts so only the waiter
  // below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto config = config_for(config_path, data);
  config.validate();
  service::ScreeningServer server(service::build_runtime(config));
  const int port = server.bind();
  std::cout << "listening on http://" << config.bind_address << ':' << port << "\nport " << port
            << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "shutting down\n";
    server.stop();
  });
  server.run();
  // run() may also end without a signal; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int ingest(const std::string& source, const std::string& store_name, const std::string& config_path,
           const std::string& lang, const fs::path& data) {
  const auto config = config_for(config_path, data);
  auto embedder = service::make_embedder(config);
  const auto snapshot = config.store_snapshot(store_name);
  rag::VectorStore store = fs::exists(snapshot) ? rag::VectorStore::load_snapshot(snapshot, store_name)
                                                : rag::VectorStore(store_name);
  rag::IngestOptions options;
  options.default_lang = require_language(lang);
  options.chunking = config.chunking;
  const auto tokenizer = rag::make_tokenizer("whitespace");
  const auto report = rag::ingest(source, store, *embedder, *tokenizer, options);
  fs::create_directories(snapshot.parent_path());
  store.save_snapshot(snapshot);
  emit({{"store", store_name},
        {"snapshot", snapshot.string()},
        {"documents", report.documents},
        {"chunks", report.chunks},
        {"skipped", report.skipped},
        {"warnings", report.warnings},
        {"store_size", store.size()}},
       "");
  return 0;
}

int replay_file(const std::string& path) {
  const auto records = dialogue::read_log_file(path);
  const auto state = dialogue::replay(fs::path(path).stem().string(), records);
  emit(service::wire_session(state), "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PHQ-9 screening chatbot service and analysis tools"};
  app.require_subcommand(1);
  std::string data_flag;
  app.add_option("--data-dir", data_flag, "Directory with instrument, lexicon and helpline files");

  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  std::string source, store_name, lang = "en";
  auto* ingest_cmd = app.add_subcommand("ingest", "Chunk, embed and store documents");
  ingest_cmd->add_option("--source", source, "File or directory of .txt/.jsonl documents")
      ->required()
      ->check(CLI::ExistingPath);
  ingest_cmd->add_option("--store", store_name, "Target store (cbt_guide, emotional, helpline)")->required();
  ingest_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  ingest_cmd->add_option("--lang", lang, "Language of plain-text files (en, zh)");

  std::string session_path;
  auto* replay_cmd = app.add_subcommand("replay", "Rebuild a session from its log");
  replay_cmd->add_option("--session", session_path, "Session log (.jsonl)")->required()->check(CLI::ExistingFile);

  auto* stats_cmd = app.add_subcommand("stats", "Concordance and survey analyses");
  stats_cmd->require_subcommand(1);
  std::string pairs, out, rating, by;
  std::vector<std::string> factors, endpoints;
  stats::StatsConfig stats_cfg;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--pairs", pairs, "Pairs CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Write the JSON report here instead of stdout");
    cmd->add_option("--alpha", stats_cfg.alpha, "Significance level for intervals");
  };
  auto* concordance_cmd = stats_cmd->add_subcommand("concordance", "Self vs chatbot agreement report");
  add_common(concordance_cmd);
  concordance_cmd->add_option("--exact-threshold", stats_cfg.exact_wilcoxon_threshold,
                              "Largest n for the exact signed-rank p");
  auto* groups_cmd = stats_cmd->add_subcommand("groups", "Compare a rating across groups");
  add_common(groups_cmd);
  groups_cmd->add_option("--rating", rating, "q17..q20")->required();
  groups_cmd->add_option("--by", by, "Grouping column")->required();
  auto* contingency_cmd = stats_cmd->add_subcommand("contingency", "2x2 tests with Holm adjustment");
  add_common(contingency_cmd);
  contingency_cmd->add_option("--factor", factors, "Binary factor(s)")->required();
  contingency_cmd->add_option("--endpoint", endpoints, "Binary endpoint(s)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto data = data_dir(data_flag);
    if (*serve_cmd) return serve(config_path, data);
    if (*ingest_cmd) return ingest(source, store_name, config_path, lang, data);
    if (*replay_cmd) return replay_file(session_path);
    const auto records = stats::load_pairs_csv(pairs);
    if (*concordance_cmd) emit(stats::concordance_report(records, stats_cfg), out);
    if (*groups_cmd) emit(stats::groups_report(records, rating, by, stats_cfg), out);
    if (*contingency_cmd) emit(stats::contingency_report(records, factors, endpoints, stats_cfg), out);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
