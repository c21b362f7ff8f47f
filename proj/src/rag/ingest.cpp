#include "screenbot/rag/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/json_file.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::rag {

namespace {

std::vector<std::filesystem::path> collect(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else if (fs::is_directory(path)) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext == ".txt" || ext == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    throw NotFoundError("ingest source not found: " + path.string());
  }
  return files;
}

struct Sink {
  VectorStore& store;
  Embedder& embedder;
  const Tokenizer& tokenizer;
  const IngestOptions& options;
  IngestReport& report;

  void add(const Document& doc) {
    auto chunks = chunk_document(doc, tokenizer, options.chunking);
    store.remove_document(doc.doc_id);
    report.chunks += store.add(std::move(chunks), embedder);
    ++report.documents;
  }

  void skip(const std::string& why) {
    ++report.skipped;
    report.warnings.push_back(why);
  }
};

}  // namespace

IngestReport ingest(const std::filesystem::path& path, VectorStore& store, Embedder& embedder,
                    const Tokenizer& tokenizer, const IngestOptions& options) {
  IngestReport report;
  Sink sink{store, embedder, tokenizer, options, report};
  const auto store_kind = default_kind_for_store(store.name());

  for (const auto& file : collect(path)) {
    if (file.extension() == ".jsonl") {
      std::ifstream in(file, std::ios::binary);
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        const std::string where = file.string() + ":" + std::to_string(lineno);
        if (text::trim(line).empty()) continue;
        nlohmann::json rec;
        try {
          rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
          sink.skip(where + ": not valid JSON");
          continue;
        }
        if (!rec.is_object() || !rec.contains("text") || !rec["text"].is_string() ||
            text::trim(rec["text"].get<std::string>()).empty()) {
          sink.skip(where + ": missing or empty text");
          continue;
        }
        Document doc;
        doc.text = rec["text"].get<std::string>();
        doc.doc_id = rec.contains("doc_id") && rec["doc_id"].is_string()
                         ? rec["doc_id"].get<std::string>()
                         : file.stem().string() + "#" + std::to_string(lineno);
        const auto kind = rec.contains("source_kind") && rec["source_kind"].is_string()
                              ? parse_source_kind(rec["source_kind"].get<std::string>())
                              : store_kind;
        if (!kind) {
          sink.skip(where + ": unknown source_kind");
          continue;
        }
        if (store_for(*kind) != store.name()) {
          sink.skip(where + ": source_kind '" + std::string(source_kind_name(*kind)) +
                    "' belongs to store '" + std::string(store_for(*kind)) + "'");
          continue;
        }
        doc.source_kind = *kind;
        doc.lang = options.default_lang;
        if (rec.contains("lang")) {
          const auto lang = rec["lang"].is_string() ? parse_language(rec["lang"].get<std::string>())
                                                    : std::nullopt;
          if (!lang) {
            sink.skip(where + ": unsupported lang");
            continue;
          }
          doc.lang = *lang;
        }
        sink.add(doc);
      }
    } else {
      Document doc;
      doc.text = read_text_file(file);
      if (text::trim(doc.text).empty()) {
        sink.skip(file.string() + ": empty document");
        continue;
      }
      doc.doc_id = std::filesystem::is_directory(path)
                       ? std::filesystem::relative(file, path).replace_extension().string()
                       : file.stem().string();
      doc.source_kind = store_kind.value_or(SourceKind::Cbt);
      doc.lang = options.default_lang;
      sink.add(doc);
    }
  }
  return report;
}

}  // namespace screenbot::rag
