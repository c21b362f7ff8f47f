#include "screenbot/phq9/instrument.hpp"

#include <set>

#include "screenbot/core/errors.hpp"
#include "screenbot/core/hash.hpp"
#include "screenbot/core/json_file.hpp"
#include "screenbot/core/text.hpp"

namespace screenbot::phq9 {

Instrument Instrument::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw DataError("instrument: expected a JSON array of items");
  Instrument inst;
  std::set<int> seen;
  for (const auto& rec : doc) {
    Phq9Item item;
    if (!rec.contains("index") || !rec.at("index").is_number_integer()) {
      throw DataError("instrument: item without integer index");
    }
    item.index = rec.at("index").get<int>();
    if (item.index < 1 || item.index > kItemCount) {
      throw DataError("instrument: index " + std::to_string(item.index) + " outside 1..9");
    }
    if (!seen.insert(item.index).second) {
      throw DataError("instrument: duplicate index " + std::to_string(item.index));
    }
    const auto where = "instrument item " + std::to_string(item.index);
    if (!rec.contains("prompts") || !rec.contains("options")) {
      throw DataError(where + ": needs prompts and options");
    }
    for (Language lang : kSupportedLanguages) {
      const std::string code(language_code(lang));
      const auto& prompts = rec.at("prompts");
      if (!prompts.contains(code) || !prompts.at(code).is_string() ||
          text::trim(prompts.at(code).get<std::string>()).empty()) {
        throw DataError(where + ": missing prompt for '" + code + "'");
      }
      item.prompt_text[lang] = prompts.at(code).get<std::string>();

      const auto& options = rec.at("options");
      if (!options.contains(code) || !options.at(code).is_array() ||
          options.at(code).size() != kOptionCount) {
        throw DataError(where + ": options for '" + code + "' must have 4 labels");
      }
      std::array<std::string, kOptionCount> labels;
      for (int i = 0; i < kOptionCount; ++i) {
        const auto& label = options.at(code).at(static_cast<std::size_t>(i));
        if (!label.is_string() || text::trim(label.get<std::string>()).empty()) {
          throw DataError(where + ": empty option label for '" + code + "'");
        }
        labels[static_cast<std::size_t>(i)] = label.get<std::string>();
      }
      item.option_labels[lang] = labels;
    }
    inst.items_.push_back(std::move(item));
  }
  if (inst.items_.size() != kItemCount) {
    throw DataError("instrument: expected 9 items, found " + std::to_string(inst.items_.size()));
  }
  std::sort(inst.items_.begin(), inst.items_.end(),
            [](const Phq9Item& a, const Phq9Item& b) { return a.index < b.index; });
  inst.checksum_ = hex64(fnv1a64(doc.dump()));
  return inst;
}

Instrument Instrument::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

const Phq9Item& Instrument::item(int index) const {
  if (index < 1 || index > kItemCount) {
    throw DomainError("item index " + std::to_string(index) + " outside 1..9");
  }
  return items_[static_cast<std::size_t>(index - 1)];
}

}  // namespace screenbot::phq9
