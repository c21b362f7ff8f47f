#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + SCREENBOT_CLI_PATH + "\" " + args + " > \"" + out.string() +
                          "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string pairs_csv() { return (testsupport::fixture_dir() / "pairs_132.csv").string(); }

}  // namespace

TEST_CASE("stats concordance output is byte-identical across runs") {
  const auto dir = testsupport::temp_dir("cli");
  const auto a = cli("stats concordance --pairs " + pairs_csv(), dir);
  const auto b = cli("stats concordance --pairs " + pairs_csv(), dir);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["identical_count"] == 59);
  CHECK(j["abs_diff"]["median"] == 1.0);

  const auto file = dir / "report.json";
  REQUIRE(cli("stats concordance --pairs " + pairs_csv() + " --out " + file.string(), dir).status == 0);
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  fs::remove_all(dir);
}

TEST_CASE("stats groups and contingency") {
  const auto dir = testsupport::temp_dir("cli");
  const auto g = cli("stats groups --pairs " + pairs_csv() + " --rating q19 --by employment", dir);
  REQUIRE(g.status == 0);
  const auto gj = nlohmann::json::parse(g.out);
  CHECK(gj["test"]["test"] == "anova");
  CHECK(gj["groups"].size() == 5);
  CHECK(gj["test"]["p"].get<double>() >= 0.0);

  const auto c = cli("stats contingency --pairs " + pairs_csv() +
                         " --factor mh_experience age ethnicity education --endpoint recommend trust",
                     dir);
  REQUIRE(c.status == 0);
  const auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["family_size"] == 8);
  for (const auto& t : cj["tests"]) {
    CHECK(t["p_adjusted"].get<double>() >= t["p"].get<double>());
    CHECK(t["p_adjusted"].get<double>() <= 1.0);
    const bool small = t["min_expected"].get<double>() < 5.0;
    CHECK(t["method"] == (small ? "fisher" : "chi2_yates"));
  }
  fs::remove_all(dir);
}

TEST_CASE("stats rejects bad input with a non-zero exit") {
  const auto dir = testsupport::temp_dir("cli");
  std::ofstream(dir / "bad.csv") << "participant_id,self_score,bot_score\np1,30,2\n";
  CHECK(cli("stats concordance --pairs " + (dir / "bad.csv").string(), dir).status == 1);
  CHECK(cli("stats groups --pairs " + pairs_csv() + " --rating q99 --by employment", dir).status == 1);
  CHECK(cli("stats concordance --pairs " + pairs_csv() + " --alpha 1.5", dir).status == 2);
  CHECK(cli("stats", dir).status != 0);
  fs::remove_all(dir);
}
