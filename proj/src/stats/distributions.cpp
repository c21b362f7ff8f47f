#include "distributions.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace screenbot::stats::dist {

namespace bm = boost::math;

namespace {
double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }
}  // namespace

double normal_quantile(double p) { return bm::quantile(bm::normal_distribution<>{}, p); }

double two_sided_normal_p(double z) {
  return clamp_p(2.0 * bm::cdf(bm::complement(bm::normal_distribution<>{}, std::fabs(z))));
}

double two_sided_t_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return clamp_p(2.0 * bm::cdf(bm::complement(bm::students_t_distribution<>{df}, std::fabs(t))));
}

double chi2_sf(double x, double df) {
  if (x <= 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return clamp_p(bm::cdf(bm::complement(bm::chi_squared_distribution<>{df}, x)));
}

double f_sf(double x, double df1, double df2) {
  if (x <= 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return clamp_p(bm::cdf(bm::complement(bm::fisher_f_distribution<>{df1, df2}, x)));
}

double f_quantile(double p, double df1, double df2) {
  return bm::quantile(bm::fisher_f_distribution<>{df1, df2}, p);
}

}  // namespace screenbot::stats::dist
