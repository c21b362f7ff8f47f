#pragma once

// Thin wrappers over Boost.Math so call sites read like the formulas.
namespace screenbot::stats::dist {

double normal_quantile(double p);
double two_sided_normal_p(double z);
double two_sided_t_p(double t, double df);
double chi2_sf(double x, double df);
double f_sf(double x, double df1, double df2);
double f_quantile(double p, double df1, double df2);

}  // namespace screenbot::stats::dist
