#include "screenbot/stats/logistic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "distributions.hpp"
#include "screenbot/core/errors.hpp"

namespace screenbot::stats {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 50;

double softplus(double eta) {
  return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

struct Fit {
  double ll = 0;
  std::array<double, 2> grad{};
  std::array<double, 3> info{};  // i00, i01, i11
};

Fit evaluate(std::span<const int> y, std::span<const double> x, double b0, double b1) {
  Fit f;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double eta = b0 + b1 * x[i];
    const double p = 1.0 / (1.0 + std::exp(-eta));
    const double w = p * (1.0 - p);
    f.ll += y[i] * eta - softplus(eta);
    f.grad[0] += y[i] - p;
    f.grad[1] += (y[i] - p) * x[i];
    f.info[0] += w;
    f.info[1] += w * x[i];
    f.info[2] += w * x[i] * x[i];
  }
  return f;
}

// In one dimension the MLE is infinite exactly when the two outcome groups
// can be split by a threshold on the predictor (ties at the threshold allowed).
bool separated(std::span<const int> y, std::span<const double> x) {
  double min1 = std::numeric_limits<double>::infinity(), max1 = -min1;
  double min0 = min1, max0 = -min1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 1) {
      min1 = std::min(min1, x[i]);
      max1 = std::max(max1, x[i]);
    } else {
      min0 = std::min(min0, x[i]);
      max0 = std::max(max0, x[i]);
    }
  }
  return max0 <= min1 || max1 <= min0;
}

}  // namespace

LogisticResult logistic_trend(std::span<const int> outcome, std::span<const double> predictor,
                              const StatsConfig& cfg) {
  if (outcome.size() != predictor.size()) throw DataError("outcome and predictor lengths differ");
  LogisticResult r;
  auto fail = [&](std::string why) {
    r.applicable = false;
    r.reason = std::move(why);
    return r;
  };
  long ones = 0;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] != 0 && outcome[i] != 1) throw DataError("logistic outcome must be 0 or 1");
    if (!std::isfinite(predictor[i])) throw DataError("non-finite predictor");
    ones += outcome[i];
  }
  if (outcome.size() < 3) return fail("needs at least three observations");
  const auto [lo, hi] = std::minmax_element(predictor.begin(), predictor.end());
  if (*lo == *hi) return fail("predictor is constant");
  if (ones == 0 || ones == static_cast<long>(outcome.size())) {
    r.separation = true;
    return fail("outcome does not vary");
  }
  if (separated(outcome, predictor)) {
    r.separation = true;
    return fail("outcome is perfectly separated by the predictor");
  }

  const double ybar = static_cast<double>(ones) / static_cast<double>(outcome.size());
  double b0 = std::log(ybar / (1 - ybar));
  double b1 = 0;
  bool converged = false;
  for (int it = 1; it <= kMaxIterations && !converged; ++it) {
    const auto f = evaluate(outcome, predictor, b0, b1);
    const double det = f.info[0] * f.info[2] - f.info[1] * f.info[1];
    if (!(det > 0)) return fail("information matrix is singular");
    const double s0 = (f.info[2] * f.grad[0] - f.info[1] * f.grad[1]) / det;
    const double s1 = (f.info[0] * f.grad[1] - f.info[1] * f.grad[0]) / det;
    b0 += s0;
    b1 += s1;
    r.iterations = it;
    converged = std::max(std::fabs(s0), std::fabs(s1)) < kTolerance;
  }
  if (!converged) return fail("Newton iterations did not converge");

  const auto f = evaluate(outcome, predictor, b0, b1);
  const double det = f.info[0] * f.info[2] - f.info[1] * f.info[1];
  r.intercept = b0;
  r.slope = b1;
  r.log_likelihood = f.ll;
  r.se_slope = std::sqrt(f.info[0] / det);
  r.or_per_unit = std::exp(b1);
  const double z = cfg.z_critical();
  r.ci95_low = std::exp(b1 - z * r.se_slope);
  r.ci95_high = std::exp(b1 + z * r.se_slope);
  r.p = dist::two_sided_normal_p(b1 / r.se_slope);
  return r;
}

}  // namespace screenbot::stats
