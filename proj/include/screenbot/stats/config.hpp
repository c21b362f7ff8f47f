#pragma once

#include <cstddef>

namespace screenbot::stats {

struct StatsConfig {
  double alpha = 0.05;
  // Signed-rank p is exact when at most this many non-zero differences remain.
  std::size_t exact_wilcoxon_threshold = 25;
  bool two_sided = true;

  // Throws ConfigError when alpha is outside (0, 1) or one-sided tests are asked for.
  void validate() const;
  double z_critical() const;
};

}  // namespace screenbot::stats
