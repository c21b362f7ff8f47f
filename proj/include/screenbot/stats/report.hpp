#pragma once

#include <json.hpp>
#include <string_view>
#include <vector>

#include "screenbot/stats/config.hpp"
#include "screenbot/stats/records.hpp"

namespace screenbot::stats {

// Agreement between the two administrations. Keys are sorted, so equal input
// gives byte-identical dumps.
nlohmann::json concordance_report(const std::vector<PairedRecord>& records,
                                  const StatsConfig& cfg = {});

// Rating compared across levels of a categorical field: Student t for two
// levels, one-way ANOVA for more. Records without the rating or level are skipped.
nlohmann::json groups_report(const std::vector<PairedRecord>& records, std::string_view rating,
                             std::string_view by, const StatsConfig& cfg = {});

// One 2x2 table per (factor, endpoint) combination with Holm adjustment
// across the whole family.
nlohmann::json contingency_report(const std::vector<PairedRecord>& records,
                                  const std::vector<std::string>& factors,
                                  const std::vector<std::string>& endpoints,
                                  const StatsConfig& cfg = {});

}  // namespace screenbot::stats
