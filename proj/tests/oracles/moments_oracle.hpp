#pragma once

#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

struct Moments {
  double mean;
  double sd;
};

// Two-pass mean and sample sd at 100 digits, rounded once to double.
inline Moments mean_sd(const std::vector<double>& xs) {
  using big = boost::multiprecision::cpp_bin_float_100;
  big sum = 0;
  for (double x : xs) sum += big(x);
  const big mean = sum / big(xs.size());
  big ss = 0;
  for (double x : xs) {
    const big d = big(x) - mean;
    ss += d * d;
  }
  Moments m{static_cast<double>(mean), 0.0};
  if (xs.size() > 1) m.sd = static_cast<double>(sqrt(ss / big(xs.size() - 1)));
  return m;
}

}  // namespace oracle
