#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "oracles/chunk_oracle.hpp"
#include "screenbot/core/errors.hpp"
#include "screenbot/rag/chunker.hpp"
#include "screenbot/rag/embedding.hpp"
#include "screenbot/rag/ingest.hpp"
#include "screenbot/rag/retrieval.hpp"
#include "screenbot/rag/vector_store.hpp"
#include "support.hpp"

using namespace screenbot;
using namespace screenbot::rag;

namespace {

std::string words(std::size_t n, std::mt19937_64& rng) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += (rng() % 17 == 0) ? "\n\n" : " ";
    out += testsupport::random_word(rng);
  }
  return out;
}

Document doc_of(std::string text, std::string id = "d") {
  return {std::move(id), SourceKind::Cbt, Language::English, std::move(text)};
}

}  // namespace

TEST_CASE("whitespace tokenizer") {
  WhitespaceTokenizer tok;
  const auto spans = tok.tokenize("  ab\tcd\n\nef ");
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].begin == 2);
  CHECK(spans[0].end == 4);
  CHECK(spans[2].begin == 9);
  CHECK(tok.tokenize("").empty());
  CHECK(tok.tokenize("好的　谢谢").size() == 2);  // ideographic space separates
  CHECK_THROWS_AS(make_tokenizer("bpe"), ConfigError);
}

TEST_CASE("chunk_document examples") {
  WhitespaceTokenizer tok;
  std::mt19937_64 rng(1);
  SUBCASE("short document is a single verbatim chunk") {
    const auto text = words(100, rng) + "\n";
    const auto chunks = chunk_document(doc_of(text), tok);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].text == text);
    CHECK(chunks[0].token_start == 0);
    CHECK(chunks[0].token_end == 100);
  }
  SUBCASE("1024 tokens give offsets 0, 410, 820") {
    const auto chunks = chunk_document(doc_of(words(1024, rng)), tok);
    REQUIRE(chunks.size() == 3);
    CHECK(chunks[0].token_start == 0);
    CHECK(chunks[1].token_start == 410);
    CHECK(chunks[2].token_start == 820);
    CHECK(chunks[0].token_end - chunks[1].token_start == 102);
    CHECK(chunks[1].token_end - chunks[2].token_start == 102);
    CHECK(chunks[2].token_end - chunks[2].token_start == 204);
    for (std::size_t i = 0; i < chunks.size(); ++i) CHECK(chunks[i].seq == static_cast<int>(i));
  }
  SUBCASE("empty and whitespace-only text") {
    CHECK(chunk_document(doc_of(""), tok).empty());
    CHECK(chunk_document(doc_of(" \n\t "), tok).empty());
  }
  SUBCASE("bad options") {
    CHECK_THROWS_AS(chunk_document(doc_of("a"), tok, {0, 0.2}), DomainError);
    CHECK_THROWS_AS(chunk_document(doc_of("a"), tok, {512, 1.0}), DomainError);
  }
}

TEST_CASE("overlap rounding") {
  ChunkingOptions o;
  CHECK(o.overlap_tokens() == 102);
  CHECK(o.stride() == 410);
}

TEST_CASE("chunker matches the reference window enumeration") {
  WhitespaceTokenizer tok;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> len(1, 5000);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = trial < 10 ? std::vector<std::size_t>{1, 511, 512, 513, 922, 923, 1024, 1025, 1332, 1333}[trial]
                                     : len(rng);
    const auto text = words(n, rng);
    const auto chunks = chunk_document(doc_of(text), tok);
    const auto expected = oracle::windows(n, 512, 102);
    REQUIRE(chunks.size() == expected.size());
    const auto spans = tok.tokenize(text);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      CHECK(chunks[i].token_start == expected[i].first);
      CHECK(chunks[i].token_end == expected[i].second);
      // Chunk text re-tokenizes to exactly its token range.
      const auto inner = tok.tokenize(chunks[i].text);
      CHECK(inner.size() == chunks[i].token_end - chunks[i].token_start);
      CHECK(text.substr(spans[chunks[i].token_start].begin,
                        spans[chunks[i].token_start].end - spans[chunks[i].token_start].begin) ==
            chunks[i].text.substr(inner.front().begin, inner.front().end - inner.front().begin));
    }
  }
}

TEST_CASE("embedding vector basics") {
  CHECK_THROWS_AS(EmbeddingVector({1.0, NAN}), DomainError);
  const auto v = EmbeddingVector::normalized({3.0, 4.0});
  CHECK(v.values()[0] == doctest::Approx(0.6));
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(EmbeddingVector::normalized({0.0, 0.0}).norm() == 0.0);
  CHECK(cosine(v, EmbeddingVector::normalized({0.0, 0.0})) == 0.0);
  CHECK_THROWS_AS(cosine(v, EmbeddingVector({1.0})), DomainError);
}

TEST_CASE("hashing embedder") {
  HashingEmbedder emb;
  const std::string t = "I have been sleeping badly for two weeks";
  const auto a = emb.embed(t);
  const auto b = emb.embed(t);
  CHECK(a == b);
  CHECK(a.dim() == 256);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
  CHECK(std::abs(cosine(a, b) - 1.0) < 1e-9);
  CHECK(emb.embed("SLEEPING badly!") == emb.embed("sleeping badly"));
  CHECK(HashingEmbedder::features("我很累").size() == 5);
}

TEST_CASE("hashing embedder: disjoint token sets stay below 0.2") {
  HashingEmbedder emb;
  std::mt19937_64 rng(20251018);
  double worst = -1.0;
  for (int pair = 0; pair < 100; ++pair) {
    std::set<std::string> used;
    auto sentence = [&] {
      std::string s;
      for (int i = 0; i < 8; ++i) {
        std::string w;
        do {
          w = testsupport::random_word(rng, 3, 8);
        } while (!used.insert(w).second);
        s += (i ? " " : "") + w;
      }
      return s;
    };
    const auto x = sentence();
    const auto y = sentence();
    const double c = cosine(emb.embed(x), emb.embed(y));
    worst = std::max(worst, c);
    CHECK_MESSAGE(c < 0.2, x << " | " << y);
  }
  MESSAGE("max cosine over 100 disjoint pairs: " << worst);
}

TEST_CASE("cosine is symmetric and bounded") {
  HashingEmbedder emb;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto a = emb.embed(words(1 + rng() % 20, rng));
    const auto b = emb.embed(words(1 + rng() % 20, rng));
    const double ab = cosine(a, b);
    CHECK(std::abs(ab - cosine(b, a)) <= 1e-12);
    CHECK(ab >= -1.0 - 1e-12);
    CHECK(ab <= 1.0 + 1e-12);
  }
}

TEST_CASE("store add and query") {
  auto emb = std::make_shared<HashingEmbedder>();
  StoreSet stores(emb);
  SUBCASE("single chunk self query") {
    Chunk c{"d", 0, 0, 3, "feeling low today"};
    CHECK(stores.store_add("emotional", {c}) == 1);
    const auto hits = stores.store_query("emotional", emb->embed(c.text), 3);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].chunk == c);
    CHECK(hits[0].score == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hits[0].store_name == "emotional");
  }
  SUBCASE("empty store") { CHECK(stores.store_query("helpline", emb->embed("x"), 3).empty()); }
  SUBCASE("unknown store") {
    CHECK_THROWS_AS(stores.store_query("nope", emb->embed("x"), 3), NotFoundError);
    CHECK_THROWS_AS(stores.store_add("nope", {}), NotFoundError);
  }
  SUBCASE("k must be positive") {
    stores.store_add("helpline", {Chunk{"d", 0, 0, 1, "x"}});
    CHECK_THROWS_AS(stores.store_query("helpline", emb->embed("x"), 0), DomainError);
  }
}

TEST_CASE("top-k equals exhaustive cosine ranking") {
  auto emb = std::make_shared<HashingEmbedder>();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    VectorStore store("cbt_guide");
    std::vector<Chunk> chunks;
    for (int i = 0; i < 5; ++i) chunks.push_back({"d" + std::to_string(i), 0, 0, 4, words(4, rng)});
    store.add(chunks, *emb);
    const auto q = emb->embed(words(3, rng) + " " + chunks[rng() % 5].text);
    // Oracle: score all five, sort by (score desc, index asc).
    std::vector<std::pair<double, int>> all;
    for (int i = 0; i < 5; ++i) all.emplace_back(-cosine(q, emb->embed(chunks[i].text)), i);
    std::sort(all.begin(), all.end());
    const auto hits = store.query(q, 3);
    REQUIRE(hits.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(hits[i].chunk == chunks[all[i].second]);
      CHECK(hits[i].score == doctest::Approx(-all[i].first).epsilon(1e-12));
    }
  }
}

TEST_CASE("ties keep insertion order") {
  VectorStore store("emotional");
  store.add({Chunk{"a", 0, 0, 1, "x"}, Chunk{"b", 0, 0, 1, "y"}, Chunk{"c", 0, 0, 1, "z"}},
            {EmbeddingVector({1.0, 0.0}), EmbeddingVector({0.0, 1.0}), EmbeddingVector({1.0, 0.0})});
  const auto hits = store.query(EmbeddingVector({1.0, 0.0}), 3);
  CHECK(hits[0].chunk.doc_id == "a");
  CHECK(hits[1].chunk.doc_id == "c");
  CHECK(hits[2].chunk.doc_id == "b");
  CHECK_THROWS_AS(store.add({Chunk{}}, {EmbeddingVector({1.0, 0.0, 0.0})}), DomainError);
}

TEST_CASE("snapshot round trip") {
  auto emb = std::make_shared<HashingEmbedder>();
  std::mt19937_64 rng(6);
  VectorStore store("cbt_guide");
  std::vector<Chunk> chunks;
  for (int i = 0; i < 20; ++i) chunks.push_back({"d" + std::to_string(i), i, 0, 6, words(6, rng)});
  store.add(chunks, *emb);
  const auto dir = testsupport::temp_dir("snap");
  store.save_snapshot(dir / "cbt_guide.jsonl");
  const auto loaded = VectorStore::load_snapshot(dir / "cbt_guide.jsonl", "cbt_guide");
  CHECK(loaded.size() == 20);
  const auto q = emb->embed(chunks[7].text);
  const auto a = store.query(q, 5);
  const auto b = loaded.query(q, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a[i].chunk == b[i].chunk);
    CHECK(a[i].score == b[i].score);
  }
  std::filesystem::remove_all(dir);
}

namespace {

// Wraps a store with a fixed delay or a failure, to exercise fan-out.
class SlowStore final : public SearchableStore {
 public:
  SlowStore(std::shared_ptr<const SearchableStore> inner, std::chrono::milliseconds delay, bool fail = false)
      : inner_(std::move(inner)), delay_(delay), fail_(fail) {}
  const std::string& name() const override { return inner_->name(); }
  std::vector<ScoredChunk> query(const EmbeddingVector& q, std::size_t k) const override {
    std::this_thread::sleep_for(delay_);
    if (fail_) throw std::runtime_error("store offline");
    return inner_->query(q, k);
  }

 private:
  std::shared_ptr<const SearchableStore> inner_;
  std::chrono::milliseconds delay_;
  bool fail_;
};

}  // namespace

TEST_CASE("query_stores") {
  auto emb = std::make_shared<HashingEmbedder>();
  StoreSet stores(emb);
  SUBCASE("all empty") {
    Retriever r(emb, stores.ordered());
    const auto b = r.query_stores("hello", 3);
    CHECK(b.empty());
    CHECK_FALSE(b.degraded());
    CHECK(b.sections.size() == 3);
  }
  SUBCASE("one chunk per store in configured order") {
    stores.store_add("helpline", {Chunk{"h", 0, 0, 2, "call samaritans"}});
    stores.store_add("cbt_guide", {Chunk{"c", 0, 0, 2, "thought record"}});
    stores.store_add("emotional", {Chunk{"e", 0, 0, 2, "i hear you"}});
    Retriever r(emb, stores.ordered());
    const auto b = r.query_stores("anything", 3);
    REQUIRE(b.sections.size() == 3);
    CHECK(b.sections[0].store_name == "cbt_guide");
    CHECK(b.sections[1].store_name == "emotional");
    CHECK(b.sections[2].store_name == "helpline");
    for (const auto& s : b.sections) CHECK(s.hits.size() == 1);
  }
  SUBCASE("identical text in two stores is not deduplicated") {
    stores.store_add("cbt_guide", {Chunk{"x", 0, 0, 2, "same words"}});
    stores.store_add("emotional", {Chunk{"y", 0, 0, 2, "same words"}});
    Retriever r(emb, stores.ordered());
    const auto b = r.query_stores("same words", 3);
    CHECK(b.sections[0].hits.size() == 1);
    CHECK(b.sections[1].hits.size() == 1);
    CHECK(b.sections[0].hits[0].chunk.text == b.sections[1].hits[0].chunk.text);
  }
  SUBCASE("completion order does not reorder sections; failures degrade") {
    stores.store_add("cbt_guide", {Chunk{"c", 0, 0, 1, "a"}});
    stores.store_add("emotional", {Chunk{"e", 0, 0, 1, "b"}});
    stores.store_add("helpline", {Chunk{"h", 0, 0, 1, "c"}});
    const auto base = stores.ordered();
    using namespace std::chrono_literals;
    const std::vector<std::vector<std::chrono::milliseconds>> delays{
        {60ms, 30ms, 0ms}, {0ms, 60ms, 30ms}, {30ms, 0ms, 60ms}};
    for (const auto& d : delays) {
      std::vector<std::shared_ptr<const SearchableStore>> wrapped;
      for (int i = 0; i < 3; ++i) wrapped.push_back(std::make_shared<SlowStore>(base[i], d[i]));
      const auto b = Retriever(emb, wrapped).query_stores("a", 3);
      CHECK(b.sections[0].hits.at(0).chunk.doc_id == "c");
      CHECK(b.sections[1].hits.at(0).chunk.doc_id == "e");
      CHECK(b.sections[2].hits.at(0).chunk.doc_id == "h");
    }
    // Queries run concurrently: three 80 ms stores finish well under 240 ms.
    std::vector<std::shared_ptr<const SearchableStore>> slow;
    for (int i = 0; i < 3; ++i) slow.push_back(std::make_shared<SlowStore>(base[i], 80ms));
    const auto t0 = std::chrono::steady_clock::now();
    Retriever(emb, slow).query_stores("a", 3);
    CHECK(std::chrono::steady_clock::now() - t0 < 200ms);

    std::vector<std::shared_ptr<const SearchableStore>> broken{
        base[0], std::make_shared<SlowStore>(base[1], 0ms, true), base[2]};
    const auto b = Retriever(emb, broken).query_stores("a", 3);
    CHECK(b.degraded());
    CHECK(b.sections[1].error.value() == "store offline");
    CHECK(b.sections[0].hits.size() == 1);
    CHECK(b.sections[2].hits.size() == 1);
  }
}

TEST_CASE("ingest text and jsonl sources") {
  auto emb = std::make_shared<HashingEmbedder>();
  WhitespaceTokenizer tok;
  const auto dir = testsupport::temp_dir("ingest");
  std::mt19937_64 rng(8);
  {
    std::ofstream(dir / "a.txt") << words(600, rng);
    std::ofstream(dir / "b.txt") << words(40, rng);
    std::ofstream out(dir / "c.jsonl");
    out << R"({"text": "thought challenging worksheet", "source_kind": "guide", "lang": "en", "doc_id": "g1"})" << "\n";
    out << "{not json\n";
    out << R"({"text": "I hear you", "source_kind": "emotional"})" << "\n";
    out << R"({"source_kind": "cbt"})" << "\n";
    out << R"({"text": "x", "source_kind": "cbt", "lang": "fr"})" << "\n";
  }
  VectorStore store("cbt_guide");
  auto report = ingest(dir, store, *emb, tok);
  CHECK(report.documents == 3);
  CHECK(report.chunks == 2 + 1 + 1);
  CHECK(report.skipped == 4);
  CHECK(report.warnings.size() == 4);
  CHECK(store.size() == 4);

  // Re-ingest is idempotent by doc_id.
  report = ingest(dir, store, *emb, tok);
  CHECK(store.size() == 4);

  CHECK_THROWS_AS(ingest(dir / "missing", store, *emb, tok), NotFoundError);
  std::filesystem::remove_all(dir);
}
