#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vnpda/rng.hpp"
#include "vnpda/stats.hpp"

using namespace vnpda;
using namespace vnpda::stats;

TEST_CASE("log_beta closed forms") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_beta(3.0, 3.0) == doctest::Approx(std::log(1.0 / 30.0)).epsilon(1e-13));
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-13));
  CHECK(log_beta(2.0, 5.0) == doctest::Approx(log_beta(5.0, 2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(log_beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_beta(1.0, -2.0), DomainError);
}

TEST_CASE("log_gamma reference values") {
  const std::pair<double, double> ref[] = {{0.5, 0.5723649429247},
                                           {1e-3, 6.907178885383853},
                                           {2.5, 0.2846828704729192},
                                           {10.0, 12.801827480081469},
                                           {100.5, 361.43554046777757},
                                           {1e6, 12815504.569147611}};
  for (auto [x, v] : ref) CHECK(log_gamma(x) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("log_beta recurrence B(a+1,b) = B(a,b) a/(a+b)") {
  for (double a : {0.3, 1.0, 4.5, 77.0}) {
    for (double b : {0.7, 2.0, 19.0}) {
      CHECK(log_beta(a + 1, b) ==
            doctest::Approx(log_beta(a, b) + std::log(a / (a + b))).epsilon(1e-12));
    }
  }
}

TEST_CASE("normal quantile fixtures and bisection oracle") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.25) == doctest::Approx(-0.674489750196082).epsilon(1e-12));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-12));
  for (double q = 0.0005; q < 1.0; q += 0.0173) {
    CHECK(std::abs(normal_quantile(q) - oracle::normal_quantile(q)) <= 1e-9);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("normal quantile round-trips the CDF to 1e-10") {
  Rng rng(11);
  for (int i = 0; i < 20000; ++i) {
    const double q = rng.uniform_open();
    CHECK(std::abs(normal_cdf(normal_quantile(q)) - q) <= 1e-10);
  }
  for (double q : {1e-300, 1e-100, 1e-20, 1e-5, 1 - 1e-5, 1 - 1e-12}) {
    CHECK(std::abs(normal_cdf(normal_quantile(q)) - q) <= 1e-10);
  }
}

TEST_CASE("normal tails") {
  CHECK(normal_cdf(-8.5) == doctest::Approx(9.47953482220325e-18).epsilon(1e-12));
  CHECK(normal_sf(8.5) == doctest::Approx(9.47953482220325e-18).epsilon(1e-12));
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
}

TEST_CASE("expit") {
  CHECK(expit(0.0) == 0.5);
  for (double z : {1e-3, 0.7, 5.0, 30.0, 300.0}) {
    CHECK(std::abs(expit(-z) - (1.0 - expit(z))) <= 1e-15);
  }
  CHECK(expit(700.0) <= 1.0);
  CHECK(expit(30.0) < 1.0);
  CHECK(expit(-700.0) > 0.0);
  CHECK(expit(2.0) == doctest::Approx(oracle::expit(2.0)).epsilon(1e-15));
}

TEST_CASE("Kolmogorov survival function") {
  const std::pair<double, double> ref[] = {{0.3, 0.9999906941986655}, {0.5, 0.9639452436648751},
                                           {1.0, 0.26999967167735456}, {1.18, 0.1234538094297657},
                                           {1.5, 0.022217962616525127}, {2.0, 0.0006709252557796953},
                                           {3.0, 3.045995948942526e-08}};
  for (auto [z, v] : ref) CHECK(kolmogorov_sf(z) == doctest::Approx(v).epsilon(1e-10));
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(-1.0) == 1.0);
  double prev = 1.0;
  for (double z = 0.05; z < 4.0; z += 0.01) {
    const double v = kolmogorov_sf(z);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("Shapiro-Wilk reference fixtures") {
  for (const auto& f : fixture::shapiro_wilk()) {
    const TestResult r = shapiro_wilk(f.x);
    CHECK(std::abs(r.statistic - f.w) <= 1e-4);
    CHECK(std::abs(r.p_value - f.p) <= 1e-4);
  }
}

TEST_CASE("Shapiro-Wilk preconditions and invariance") {
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1.0, 2.0}), InputError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 1.0)), InputError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{2.0, 2.0, 2.0, 2.0}), DegenerateSample);

  Rng rng(5);
  std::vector<double> x(57);
  for (double& v : x) v = rng.gamma(2.0, 1.0);
  std::vector<double> t(x.size());
  std::transform(x.begin(), x.end(), t.begin(), [](double v) { return 3.7 * v - 12.0; });
  const TestResult a = shapiro_wilk(x);
  const TestResult b = shapiro_wilk(t);
  CHECK(std::abs(a.statistic - b.statistic) <= 1e-10);
  CHECK(a.statistic > 0.0);
  CHECK(a.statistic <= 1.0);
  CHECK(a.p_value >= 0.0);
  CHECK(a.p_value <= 1.0);
}

TEST_CASE("Shapiro-Wilk rejects Cauchy samples of size 100") {
  int rejected = 0;
  const int seeds = 300;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(1000 + s);
    std::vector<double> x(100);
    for (double& v : x) v = rng.cauchy(0.0, 1.0);
    rejected += shapiro_wilk(x).p_value < 0.01;
  }
  CHECK(rejected >= seeds - 3);
}

TEST_CASE("KS two-sample fixtures") {
  for (const auto& f : fixture::ks_two_sample()) {
    const TestResult r = ks_two_sample(f.a, f.b);
    CHECK(std::abs(r.statistic - f.d) <= 1e-12);
    CHECK(std::abs(r.p_value - f.p) <= 1e-4);
  }
  const std::vector<double> a = fixture::ks_two_sample()[0].a;
  const std::vector<double> b = fixture::ks_two_sample()[0].b;
  TestResult r = ks_two_sample(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 3, 4, 5});
  CHECK(r.statistic == doctest::Approx(0.25));

  r = ks_two_sample(a, a);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);

  r = ks_two_sample(std::vector<double>{-3, -2, -1}, std::vector<double>{0, 1});
  CHECK(r.statistic == 1.0);

  CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, b), InputError);
}

TEST_CASE("KS statistic equals the brute-force ECDF supremum") {
  Rng rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(1 + rng.below(30)), b(1 + rng.below(30));
    // Rounded values force ties within and across samples.
    for (double& v : a) v = std::round(rng.normal() * 4.0) / 4.0;
    for (double& v : b) v = std::round(rng.normal(0.3, 1.2) * 4.0) / 4.0;
    CHECK(std::abs(ks_two_sample(a, b).statistic - oracle::ks_statistic(a, b)) <= 1e-12);
  }
}

TEST_CASE("KS p-values are uniform under the null") {
  const int reps = 1000;
  std::vector<double> pvalues;
  for (int r = 0; r < reps; ++r) {
    Rng rng(substream_seed(2024, static_cast<std::uint64_t>(r)));
    std::vector<double> a(500), b(700);
    for (double& v : a) v = rng.normal();
    for (double& v : b) v = rng.normal();
    pvalues.push_back(ks_two_sample(a, b).p_value);
  }
  std::sort(pvalues.begin(), pvalues.end());
  double d = 0.0;
  for (int i = 0; i < reps; ++i) {
    d = std::max({d, (i + 1.0) / reps - pvalues[i], pvalues[i] - static_cast<double>(i) / reps});
  }
  CHECK(kolmogorov_sf(std::sqrt(static_cast<double>(reps)) * d) >= 0.01);
}
