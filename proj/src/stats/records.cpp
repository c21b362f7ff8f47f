#include "screenbot/stats/records.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <set>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/text.hpp"
#include "screenbot/phq9/scoring.hpp"

namespace screenbot::stats {

namespace {

enum class Column {
  Id, Self, Bot, Country, AgeGroup, Gender, Ethnicity, Education, Employment,
  MhExperience, ChatbotExperience, Q17, Q18, Q19, Q20, Trust, Prefer, Recommend
};

const std::map<std::string, Column, std::less<>>& column_names() {
  static const std::map<std::string, Column, std::less<>> names{
      {"participant_id", Column::Id},      {"self_score", Column::Self},
      {"bot_score", Column::Bot},          {"country", Column::Country},
      {"age_group", Column::AgeGroup},     {"gender", Column::Gender},
      {"ethnicity", Column::Ethnicity},    {"education", Column::Education},
      {"employment", Column::Employment},  {"mh_experience", Column::MhExperience},
      {"chatbot_experience", Column::ChatbotExperience},
      {"q17", Column::Q17},                {"q18", Column::Q18},
      {"q19", Column::Q19},                {"q20", Column::Q20},
      {"trust", Column::Trust},            {"prefer", Column::Prefer},
      {"recommend", Column::Recommend}};
  return names;
}

// Splits the stream into CSV rows. Quoted fields may hold commas, doubled
// quotes and newlines. Each row carries the line number it started on.
struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<Row> split_csv(std::istream& in) {
  std::vector<Row> rows;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.rfind("\xEF\xBB\xBF", 0) == 0) content.erase(0, 3);

  Row row{1, {}};
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  auto end_row = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    if (row_has_content || row.fields.size() > 1 || !row.fields.front().empty()) rows.push_back(std::move(row));
    row = Row{line, {}};
    row_has_content = false;
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char ch = content[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += ch;
    }
  }
  if (quoted) throw DataError("unterminated quoted field starting on line " + std::to_string(row.line));
  if (!field.empty() || !row.fields.empty()) end_row();
  return rows;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view s, int lo, int hi, std::size_t line, std::string_view column) {
  s = text::trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    bad(line, std::string(column) + " is not an integer: '" + std::string(s) + "'");
  }
  if (v < lo || v > hi) {
    bad(line, std::string(column) + " out of range " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return v;
}

std::optional<int> parse_rating(std::string_view s, std::size_t line, std::string_view column) {
  if (text::trim(s).empty()) return std::nullopt;
  return parse_int(s, 0, 10, line, column);
}

std::optional<bool> parse_bool(std::string_view s, std::size_t line, std::string_view column) {
  const auto v = text::ascii_lower(text::trim(s));
  if (v.empty()) return std::nullopt;
  if (v == "1" || v == "true" || v == "yes" || v == "y") return true;
  if (v == "0" || v == "false" || v == "no" || v == "n") return false;
  bad(line, std::string(column) + " is not a yes/no value: '" + std::string(s) + "'");
}

bool contains(const std::string& hay, std::string_view needle) {
  return hay.find(needle) != std::string::npos;
}

std::optional<bool> age_rule(const std::string& group) {
  static const std::regex number(R"(\d+)");
  std::vector<int> bounds;
  for (auto it = std::sregex_iterator(group.begin(), group.end(), number); it != std::sregex_iterator(); ++it) {
    bounds.push_back(std::stoi(it->str()));
  }
  if (bounds.empty()) return std::nullopt;
  const auto lower = text::ascii_lower(group);
  const bool open_upper = contains(lower, "+") || contains(lower, "over") || contains(lower, "above");
  if (open_upper) {
    if (bounds.front() >= 35) return false;
    return std::nullopt;
  }
  if (bounds.back() <= 34) return true;
  if (bounds.front() >= 35) return false;
  return std::nullopt;  // a band straddling the cut point
}

std::optional<bool> ethnicity_rule(const std::string& value) {
  const auto v = text::ascii_lower(text::trim(value));
  if (v.empty() || v == "prefer not to say") return std::nullopt;
  return v.rfind("white", 0) == 0;
}

std::optional<bool> education_rule(const std::string& value) {
  const auto v = text::ascii_lower(text::trim(value));
  if (v.empty() || v == "prefer not to say") return std::nullopt;
  if (contains(v, "non-degree") || contains(v, "no degree") || v.rfind("no ", 0) == 0) return false;
  for (std::string_view kw : {"degree", "bachelor", "master", "phd", "doctor", "postgraduate",
                              "post-graduate", "undergraduate"}) {
    if (contains(v, kw)) return true;
  }
  return false;
}

std::string yes_no(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "yes" : "no";
}

}  // namespace

std::vector<PairedRecord> read_pairs_csv(std::istream& in) {
  const auto rows = split_csv(in);
  if (rows.empty()) throw DataError("pairs CSV is empty");

  std::vector<Column> columns;
  std::set<Column> seen;
  for (const auto& raw : rows.front().fields) {
    const auto name = text::ascii_lower(text::trim(raw));
    const auto it = column_names().find(name);
    if (it == column_names().end()) throw DataError("unknown column '" + name + "'");
    if (!seen.insert(it->second).second) throw DataError("duplicate column '" + name + "'");
    columns.push_back(it->second);
  }
  for (Column required : {Column::Id, Column::Self, Column::Bot}) {
    if (!seen.contains(required)) throw DataError("header needs participant_id, self_score and bot_score");
  }

  std::vector<PairedRecord> out;
  std::set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != columns.size()) {
      bad(row.line, "expected " + std::to_string(columns.size()) + " fields, found " +
                        std::to_string(row.fields.size()));
    }
    PairedRecord rec;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const std::string value(text::trim(row.fields[c]));
      switch (columns[c]) {
        case Column::Id: rec.participant_id = value; break;
        case Column::Self: rec.self_score = parse_int(value, 0, 27, row.line, "self_score"); break;
        case Column::Bot: rec.bot_score = parse_int(value, 0, 27, row.line, "bot_score"); break;
        case Column::Country: rec.demo.country = value; break;
        case Column::AgeGroup: rec.demo.age_group = value; break;
        case Column::Gender: rec.demo.gender = value; break;
        case Column::Ethnicity: rec.demo.ethnicity = value; break;
        case Column::Education: rec.demo.education = value; break;
        case Column::Employment: rec.demo.employment = value; break;
        case Column::MhExperience: rec.demo.mh_experience = parse_bool(value, row.line, "mh_experience"); break;
        case Column::ChatbotExperience:
          rec.demo.chatbot_experience = parse_bool(value, row.line, "chatbot_experience");
          break;
        case Column::Q17: rec.ratings[0] = parse_rating(value, row.line, "q17"); break;
        case Column::Q18: rec.ratings[1] = parse_rating(value, row.line, "q18"); break;
        case Column::Q19: rec.ratings[2] = parse_rating(value, row.line, "q19"); break;
        case Column::Q20: rec.ratings[3] = parse_rating(value, row.line, "q20"); break;
        case Column::Trust: rec.trust = parse_bool(value, row.line, "trust"); break;
        case Column::Prefer: rec.prefer = parse_bool(value, row.line, "prefer"); break;
        case Column::Recommend: rec.recommend = parse_bool(value, row.line, "recommend"); break;
      }
    }
    if (rec.participant_id.empty()) bad(row.line, "participant_id is empty");
    if (!ids.insert(rec.participant_id).second) bad(row.line, "duplicate participant_id");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<PairedRecord> load_pairs_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  return read_pairs_csv(in);
}

std::vector<ScorePair> score_pairs(const std::vector<PairedRecord>& records) {
  std::vector<ScorePair> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.pair());
  return out;
}

int rating_index(std::string_view name) {
  const auto n = text::ascii_lower(name);
  if (n == "q17") return 0;
  if (n == "q18") return 1;
  if (n == "q19") return 2;
  if (n == "q20") return 3;
  throw DataError("unknown rating '" + std::string(name) + "' (expected q17..q20)");
}

std::pair<std::string_view, std::string_view> dichotomy_labels(DichotomyRule rule) noexcept {
  switch (rule) {
    case DichotomyRule::Age: return {"young", "older"};
    case DichotomyRule::Ethnicity: return {"white", "non_white"};
    case DichotomyRule::Education: return {"degree", "non_degree"};
  }
  return {"", ""};
}

std::optional<bool> dichotomise(const PairedRecord& record, DichotomyRule rule) {
  switch (rule) {
    case DichotomyRule::Age: return age_rule(record.demo.age_group);
    case DichotomyRule::Ethnicity: return ethnicity_rule(record.demo.ethnicity);
    case DichotomyRule::Education: return education_rule(record.demo.education);
  }
  return std::nullopt;
}

std::optional<bool> binary_field(const PairedRecord& record, std::string_view name) {
  if (name == "age") return dichotomise(record, DichotomyRule::Age);
  if (name == "ethnicity") return dichotomise(record, DichotomyRule::Ethnicity);
  if (name == "education") return dichotomise(record, DichotomyRule::Education);
  if (name == "mh_experience") return record.demo.mh_experience;
  if (name == "chatbot_experience") return record.demo.chatbot_experience;
  if (name == "trust") return record.trust;
  if (name == "prefer") return record.prefer;
  if (name == "recommend") return record.recommend;
  throw DataError("unknown binary field '" + std::string(name) + "'");
}

std::pair<std::string, std::string> binary_labels(std::string_view name) {
  if (name == "age") return {"young", "older"};
  if (name == "ethnicity") return {"white", "non_white"};
  if (name == "education") return {"degree", "non_degree"};
  binary_field(PairedRecord{}, name);  // validates the name
  return {"yes", "no"};
}

std::string category_field(const PairedRecord& record, std::string_view name) {
  if (name == "country") return record.demo.country;
  if (name == "age_group") return record.demo.age_group;
  if (name == "gender") return record.demo.gender;
  if (name == "ethnicity") return record.demo.ethnicity;
  if (name == "education") return record.demo.education;
  if (name == "employment") return record.demo.employment;
  if (name == "mh_experience") return yes_no(record.demo.mh_experience);
  if (name == "chatbot_experience") return yes_no(record.demo.chatbot_experience);
  if (name == "self_severity") return std::string(phq9::band_id(phq9::classify_severity(record.self_score)));
  if (name == "bot_severity") return std::string(phq9::band_id(phq9::classify_severity(record.bot_score)));
  throw DataError("unknown grouping field '" + std::string(name) + "'");
}

}  // namespace screenbot::stats
