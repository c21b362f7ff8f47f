#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace screenbot {

// Reads and parses a JSON file; throws DataError naming the path on I/O or
// parse failure.
nlohmann::json read_json_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace screenbot
