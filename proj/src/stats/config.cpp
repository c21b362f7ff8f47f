#include "screenbot/stats/config.hpp"

#include "distributions.hpp"
#include "screenbot/core/errors.hpp"

namespace screenbot::stats {

void StatsConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!two_sided) throw ConfigError("only two-sided tests are implemented");
}

double StatsConfig::z_critical() const { return dist::normal_quantile(1.0 - alpha / 2.0); }

}  // namespace screenbot::stats
