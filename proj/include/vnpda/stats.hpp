#ifndef VNPDA_STATS_HPP
#define VNPDA_STATS_HPP

#include <span>

#include "vnpda/errors.hpp"

namespace vnpda::stats {

// Thrown by tests that cannot be evaluated on a sample with zero range.
class DegenerateSample : public DomainError {
 public:
  using DomainError::DomainError;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Natural log of the gamma function for x > 0.
double log_gamma(double x);

/// ln B(a, b) = lnΓ(a) + lnΓ(b) − lnΓ(a+b). Throws DomainError unless a, b > 0.
double log_beta(double a, double b);

double normal_pdf(double z);
double normal_cdf(double z);
/// P(Z > z), accurate in the far upper tail.
double normal_sf(double z);

/// Inverse of normal_cdf on (0, 1). Rational approximation followed by one
/// Halley step against erfc, absolute error well below 1e-9.
double normal_quantile(double q);

/// Logistic function 1 / (1 + e^{-z}) without overflow for large |z|.
double expit(double z);

/// Survival function of the Kolmogorov distribution, P(K > z).
double kolmogorov_sf(double z);

/// Shapiro–Wilk W and p-value (Royston's AS R94 approximation).
/// Requires 3 <= n <= 5000; a zero-range sample throws DegenerateSample.
TestResult shapiro_wilk(std::span<const double> sample);

/// Two-sample Kolmogorov–Smirnov test. The statistic is sup |F_a − F_b| over
/// the pooled sample; the p-value is kolmogorov_sf(sqrt(n_a n_b / (n_a + n_b)) D).
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace vnpda::stats

#endif  // VNPDA_STATS_HPP
