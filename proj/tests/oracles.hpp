// Reference computations used only by the tests. They deliberately avoid the
// library's own kernels: quantiles by bisection on erfc, cell membership by
// comparing against explicit boundaries, log-gamma from the C library.
#ifndef VNPDA_TESTS_ORACLES_HPP
#define VNPDA_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double normal_quantile(double q) {
  if (q <= 0.0) return -std::numeric_limits<double>::infinity();
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < q) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double alpha_for_child_layer(int child_length, double c) {
  const int l = child_length - 1;
  return l == 0 ? 1.0 : c * l * l;
}

// Layer-l boundaries of the dyadic partition centred on N(mean, sd²).
inline std::vector<double> layer_boundaries(int l, double mean, double sd) {
  const std::size_t cells = std::size_t{1} << l;
  std::vector<double> b(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    b[k] = mean + sd * normal_quantile(static_cast<double>(k) / static_cast<double>(cells));
  }
  return b;
}

// Cell index at layer l of x under the (lower, upper] convention.
inline std::size_t cell_of(double x, const std::vector<double>& boundaries) {
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
    if (x > boundaries[k] && x <= boundaries[k + 1]) return k;
  }
  return boundaries.size() - 2;
}

struct Dense {
  int depth;
  // counts[l][k][g]: layer l, cell k, group g
  std::vector<std::vector<std::array<double, 2>>> counts;
};

inline Dense dense_counts(const std::vector<double>& x, const std::vector<int>& y, int depth,
                          double mean, double sd) {
  Dense d{depth, {}};
  for (int l = 0; l <= depth; ++l) {
    const auto b = layer_boundaries(l, mean, sd);
    std::vector<std::array<double, 2>> layer(std::size_t{1} << l, {0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::size_t k = l == 0 ? 0 : cell_of(x[i], b);
      layer[k][static_cast<std::size_t>(y[i])] += 1.0;
    }
    d.counts.push_back(std::move(layer));
  }
  return d;
}

// Log Bayes factor summed over every node of every parent layer, empty or not.
inline double dense_log_bf(const Dense& d, double c) {
  double total = 0.0;
  for (int l = 0; l < d.depth; ++l) {
    const double a = alpha_for_child_layer(l + 1, c);
    const auto& children = d.counts[static_cast<std::size_t>(l + 1)];
    for (std::size_t k = 0; k < (std::size_t{1} << l); ++k) {
      const auto& L = children[2 * k];
      const auto& R = children[2 * k + 1];
      total += log_beta(a + L[1], a + R[1]) + log_beta(a + L[0], a + R[0]) -
               log_beta(a + L[0] + L[1], a + R[0] + R[1]) - log_beta(a, a);
    }
  }
  return total;
}

inline double dense_log_bf(const std::vector<double>& x, const std::vector<int>& y, int depth,
                           double mean, double sd, double c) {
  return dense_log_bf(dense_counts(x, y, depth, mean, sd), c);
}

inline double expit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Gauss–Seidel fixed point for the selection probabilities, written from the
// update rule directly (sums recomputed from scratch at every coordinate).
inline std::vector<double> omega_fixed_point(const std::vector<double>& log_bf, double u,
                                             std::vector<double> omega, double tol,
                                             int max_sweeps) {
  const double p = static_cast<double>(log_bf.size());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) {
      double others = 0.0;
      for (std::size_t i = 0; i < omega.size(); ++i) {
        if (i != j) others += omega[i];
      }
      const double eta = log_bf[j] + std::log(1.0 + others) -
                         std::log(std::pow(p, u) + p - others - 1.0);
      const double next = expit(eta);
      change += (next - omega[j]) * (next - omega[j]);
      omega[j] = next;
    }
    if (change <= tol) break;
  }
  return omega;
}

// sup |F_a − F_b| by evaluating both ECDFs at every pooled point.
inline double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  auto ecdf = [](const std::vector<double>& s, double t) {
    double c = 0.0;
    for (double v : s) c += v <= t;
    return c / static_cast<double>(s.size());
  };
  for (const auto* s : {&a, &b}) {
    for (double t : *s) d = std::max(d, std::abs(ecdf(a, t) - ecdf(b, t)));
  }
  return d;
}

}  // namespace oracle

#endif  // VNPDA_TESTS_ORACLES_HPP
