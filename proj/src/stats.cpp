#include "vnpda/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace vnpda::stats {

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive, got " +
                      std::to_string(x));
  }
#if defined(__GLIBC__)
  // The reentrant variant avoids the global signgam write of lgamma().
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("log_beta: arguments must be positive");
  }
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_sf(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("normal_quantile: probability must lie in (0, 1)");
  }
  // Acklam's rational approximation.
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (q < p_low) {
    const double t = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  } else if (q <= 1.0 - p_low) {
    const double t = q - 0.5;
    const double r = t * t;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        t /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double t = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t +
          c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }

  // Halley refinement. Work with the tail that keeps relative precision.
  const double err = x < 0.0 ? normal_cdf(x) - q : (1.0 - q) - normal_sf(x);
  const double u = err * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double expit(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double kolmogorov_sf(double z) {
  if (!(z > 0.0)) return 1.0;
  if (z < 1.18) {
    // P(K <= z) = sqrt(2π)/z Σ exp(−(2k−1)²π²/(8z²))
    const double y = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * z * z));
    const double y8 = std::pow(y, 8.0);
    double cdf = y;
    double term = y;
    for (int k = 2; k < 20; ++k) {
      // (2k−1)² − (2k−3)² = 8(k−1)
      term *= std::pow(y8, k - 1);
      cdf += term;
      if (term < 1e-17 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / z;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * z * z);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double poly(std::span<const double> coef, double x) {
  double result = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) result = result * x + *it;
  return result;
}

}  // namespace

TestResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) {
    throw InputError("shapiro_wilk: sample size must be between 3 and 5000, got " +
                     std::to_string(n));
  }
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 1e-19 * std::max(1.0, std::abs(x.front())))) {
    throw DegenerateSample("shapiro_wilk: all sample values are identical");
  }

  static constexpr std::array<double, 2> g = {-2.273, 0.459};
  static constexpr std::array<double, 6> c1 = {0.0,      0.221157, -0.147981,
                                               -2.07119, 4.434685, -2.706056};
  static constexpr std::array<double, 6> c2 = {0.0,       0.042981, -0.293762,
                                               -1.752461, 5.682633, -3.582633};
  static constexpr std::array<double, 4> c3 = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr std::array<double, 4> c4 = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr std::array<double, 4> c5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr std::array<double, 3> c6 = {-0.4803, -0.082676, 0.0030302};

  const double an = static_cast<double>(n);
  const std::size_t half = n / 2;
  // Upper-half coefficients a_{n-i+1}, stored as half_coef[i], i = 0..half-1.
  std::vector<double> half_coef(half);
  if (n == 3) {
    half_coef[0] = std::numbers::sqrt2 / 2.0;
  } else {
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;
    std::size_t first_scaled = 1;
    double fac = 0.0;
    if (n > 5) {
      first_scaled = 2;
      const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      half_coef[1] = a2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    half_coef[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) half_coef[i] = -m[i] / fac;
  }

  // W is the squared correlation between the ordered sample and the
  // antisymmetric coefficient vector.
  double mean = 0.0;
  for (double v : x) mean += v / range;
  mean /= an;
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    double coef = 0.0;
    if (i < j) {
      coef = -half_coef[i];
    } else if (i > j) {
      coef = half_coef[j];
    }
    const double xc = x[i] / range - mean;
    ssa += coef * coef;
    ssx += xc * xc;
    sax += coef * xc;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  // 1 − W, formed this way to keep precision when W is close to 1.
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  TestResult result{w, 1.0};
  if (n == 3) {
    constexpr double pi6 = 6.0 / std::numbers::pi;
    constexpr double stqr = std::numbers::pi / 3.0;
    result.p_value = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
    return result;
  }
  double y = std::log(w1);
  double mu = 0.0;
  double sigma = 0.0;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) {
      result.p_value = 1e-99;
      return result;
    }
    y = -std::log(gamma - y);
    mu = poly(c3, an);
    sigma = std::exp(poly(c4, an));
  } else {
    const double log_n = std::log(an);
    mu = poly(c5, log_n);
    sigma = std::exp(poly(c6, log_n));
  }
  result.p_value = std::clamp(normal_sf((y - mu) / sigma), 0.0, 1.0);
  return result;
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw InputError("ks_two_sample: both samples must be non-empty");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = na * nb / (na + nb);
  return TestResult{d, kolmogorov_sf(std::sqrt(en) * d)};
}

}  // namespace vnpda::stats
