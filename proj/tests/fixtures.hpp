#ifndef VNPDA_TESTS_FIXTURES_HPP
#define VNPDA_TESTS_FIXTURES_HPP

// Reference values recorded from scipy 1.15 (shapiro; ks_2samp with the
// asymptotic Kolmogorov distribution).

#include <cmath>
#include <vector>

namespace fixture {

struct ShapiroWilk {
  std::vector<double> x;
  double w;
  double p;
};

inline std::vector<ShapiroWilk> shapiro_wilk() {
  std::vector<double> y, e;
  for (int i = 0; i < 40; ++i) y.push_back((i * 7919 % 101) / 10.0 + (i % 3) * 0.37);
  for (int i = 0; i < 25; ++i) e.push_back(std::exp(i / 10.0));
  return {
      {{1, 2, 3, 4, 5}, 0.986762155211559, 0.9671739349728582},
      {{0.1, -0.3, 2.5, 1.7, -1.2, 0.9, 0.0, 3.1, -0.8, 0.4, 1.1}, 0.9650905762433164,
       0.8331316155292331},
      {{2.1, 3.5, 0.4, 8.9, 1.1, 1.2, 5.5, 3.3, 2.2, 9.1, 0.05, 4.4}, 0.8855516476433734,
       0.1032770587933417},
      {y, 0.960419710234, 0.173121692445},
      {e, 0.893138887864, 0.013046512576},
      {{1, 2, 4}, 0.964285714286, 0.636886845029},
      {{1, 2, 3}, 1.0, 1.0},
  };
}

struct KolmogorovSmirnov {
  std::vector<double> a;
  std::vector<double> b;
  double d;
  double p;
};

inline std::vector<KolmogorovSmirnov> ks_two_sample() {
  std::vector<double> a2, b2;
  for (int i = 0; i < 60; ++i) a2.push_back(3.0 * std::sin(1.3 * i));
  for (int i = 0; i < 45; ++i) b2.push_back(2.0 * std::cos(0.7 * i) + 0.5);
  return {
      {{0.61, -1.2, 0.33, 2.1, -0.45, 0.9, 1.4, -0.07, 0.25, -1.9},
       {1.5, 2.2, 0.8, 3.1, 1.9, 0.4, 2.7, 1.1},
       0.6,
       0.081518886412},
      {a2, b2, 1.0 / 3.0, 0.006597011275},
  };
}

}  // namespace fixture

#endif  // VNPDA_TESTS_FIXTURES_HPP
