#include <doctest.h>

#include <fstream>
#include <random>
#include <thread>

#include "screenbot/core/errors.hpp"
#include "screenbot/safety/safety_guard.hpp"
#include "support.hpp"

using namespace screenbot;
using namespace screenbot::safety;

TEST_CASE("detect_crisis examples") {
  const auto& g = testsupport::guard();
  const auto m = g.detect_crisis("I want to hurt myself", Language::English);
  REQUIRE(m);
  CHECK(m->phrase == "hurt myself");
  CHECK(m->begin == 10);
  CHECK(m->end == 21);
  CHECK_FALSE(g.detect_crisis("I feel great today", Language::English));
  CHECK(g.detect_crisis("SELF-HARM!!", Language::English));
  CHECK(g.detect_crisis("I just want to end my life.", Language::English));
  CHECK(g.detect_crisis("我有时候想自杀", Language::Mandarin));
  CHECK(g.detect_crisis("我不想活了", Language::Mandarin));
  // Other-language phrases are still caught.
  CHECK(g.detect_crisis("I want to kill myself", Language::Mandarin));
}

TEST_CASE("earliest match wins") {
  const auto m = testsupport::guard().detect_crisis("suicidal and want to die", Language::English);
  REQUIRE(m);
  CHECK(m->phrase == "suicidal");
}

TEST_CASE("detect_crisis is invariant under normalization") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces{"I", "WANT", "to", "Hurt", "myself", "!!", "self-harm",
                                        "fine", "day", "...", "End", "my", "life", "自杀", "，"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  const auto& g = testsupport::guard();
  for (int trial = 0; trial < 3000; ++trial) {
    std::string t;
    for (int i = 0; i < 6; ++i) t += pieces[pick(rng)] + ((rng() & 1) ? " " : "");
    for (Language lang : kSupportedLanguages) {
      CHECK(g.detect_crisis(t, lang) == g.detect_crisis(normalize_for_match(t), lang));
    }
  }
}

TEST_CASE("every lexicon phrase fires inside random padding") {
  std::mt19937_64 rng(5);
  const auto& lex = testsupport::guard().lexicon();
  const std::vector<std::string> seps{" ", ", ", "! ", "\n", "... ", "，"};
  for (Language lang : kSupportedLanguages) {
    for (const auto& phrase : lex.phrases(lang)) {
      for (int trial = 0; trial < 25; ++trial) {
        const std::string t = testsupport::random_word(rng) + seps[rng() % seps.size()] + phrase +
                              seps[rng() % seps.size()] + testsupport::random_word(rng);
        const auto m = lex.detect(t, lang);
        REQUIRE_MESSAGE(m, t);
      }
    }
  }
}

TEST_CASE("helplines_for") {
  const auto& g = testsupport::guard();
  SUBCASE("UK English has Samaritans and Shout") {
    const auto uk = g.helplines_for("UK", Language::English);
    auto has = [&](const std::string& name, const std::string& contact) {
      return std::any_of(uk.begin(), uk.end(), [&](const HelplineEntry& e) {
        return e.name == name && e.contact == contact;
      });
    };
    CHECK(has("Samaritans", "116 123"));
    CHECK(has("Shout", "text 85258"));
    for (const auto& e : uk) CHECK(e.lang == Language::English);
  }
  SUBCASE("CN Mandarin lists the two hospitals") {
    const auto cn = g.helplines_for("cn", Language::Mandarin);
    auto has = [&](const std::string& name) {
      return std::any_of(cn.begin(), cn.end(), [&](const HelplineEntry& e) { return e.name == name; });
    };
    CHECK(has("北京大学第六医院"));
    CHECK(has("上海市精神卫生中心"));
    const auto cn_en = g.helplines_for("CN", Language::English);
    CHECK(std::any_of(cn_en.begin(), cn_en.end(), [](const HelplineEntry& e) {
      return e.name == "Peking University Sixth Hospital";
    }));
  }
  SUBCASE("unknown country falls back to emergency services") {
    const auto fr = g.helplines_for("FR", Language::English);
    REQUIRE(fr.size() == 1);
    CHECK(fr[0].country == "*");
    CHECK(fr[0] == HelplineDirectory::fallback(Language::English));
  }
  SUBCASE("GB alias") { CHECK(g.helplines_for("gb", Language::English).size() >= 2); }
  SUBCASE("no supported pair is empty") {
    for (const auto& c : g.directory().countries()) {
      for (Language lang : kSupportedLanguages) CHECK_FALSE(g.helplines_for(c, lang).empty());
    }
  }
}

TEST_CASE("malformed safety data is rejected") {
  CHECK_THROWS_AS(CrisisLexicon::from_json(nlohmann::json{{"en", {"x"}}}), DataError);
  CHECK_THROWS_AS(CrisisLexicon::from_json(nlohmann::json{{"en", {"x"}}, {"zh", nlohmann::json::array()}}),
                  DataError);
  CHECK_THROWS_AS(CrisisLexicon::from_json(nlohmann::json{{"en", {"!!"}}, {"zh", {"x"}}}), DataError);
  CHECK_THROWS_AS(HelplineDirectory::from_json(nlohmann::json::array(
                      {{{"country", "UK"}, {"name", "X"}, {"contact", ""}, {"description", ""}, {"lang", "en"}}})),
                  DataError);
}

TEST_CASE("lexicon phrases are stored normalized") {
  const auto lex = CrisisLexicon::from_json(nlohmann::json{{"en", {"Self-Harm!"}}, {"zh", {"自杀"}}});
  CHECK(lex.phrases(Language::English).front() == "self harm");
}

TEST_CASE("reloadable guard swaps on file change") {
  const auto dir = testsupport::temp_dir("reload");
  auto paths = testsupport::safety_paths();
  for (auto* p : {&paths.lexicon, &paths.helplines, &paths.messages}) {
    const auto dst = dir / p->filename();
    std::filesystem::copy_file(*p, dst);
    *p = dst;
  }
  ReloadableSafetyGuard guard(paths);
  auto before = guard.current();
  CHECK_FALSE(before->detect_crisis("purple elephant", Language::English));
  CHECK_FALSE(guard.reload_if_changed());

  {
    std::ofstream out(paths.lexicon);
    out << R"({"en": ["purple elephant"], "zh": ["自杀"]})";
  }
  std::filesystem::last_write_time(paths.lexicon, std::filesystem::last_write_time(paths.lexicon) +
                                                      std::chrono::seconds(5));
  CHECK(guard.reload_if_changed());
  CHECK(guard.current()->detect_crisis("purple elephant", Language::English));
  // The old snapshot is unaffected.
  CHECK_FALSE(before->detect_crisis("purple elephant", Language::English));
  std::filesystem::remove_all(dir);
}
