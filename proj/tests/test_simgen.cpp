#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "vnpda/errors.hpp"
#include "vnpda/simgen.hpp"
#include "vnpda/stats.hpp"

using namespace vnpda;

namespace {

std::vector<double> sample(const Mixture& m, std::size_t n, std::uint64_t seed,
                           std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  std::vector<double> x(n);
  for (double& v : x) v = mixture_sample(m, rng);
  return x;
}

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace

TEST_CASE("generation is deterministic") {
  SimulationSpec spec;
  spec.setting = 4;
  spec.p = 60;
  spec.n_discriminative = 10;
  spec.seed = 99;
  const SimulatedData a = generate(spec);
  const SimulatedData b = generate(spec);
  for (std::size_t j = 0; j < spec.p; ++j) {
    CHECK(std::equal(a.train.column(j).begin(), a.train.column(j).end(), b.train.column(j).begin()));
    CHECK(std::equal(a.test.column(j).begin(), a.test.column(j).end(), b.test.column(j).begin()));
  }
  CHECK(std::equal(a.train.labels().begin(), a.train.labels().end(), b.train.labels().begin()));
  spec.seed = 100;
  const SimulatedData c = generate(spec);
  CHECK_FALSE(std::equal(a.train.column(0).begin(), a.train.column(0).end(), c.train.column(0).begin()));
}

TEST_CASE("columns are stable when p grows") {
  SimulationSpec spec;
  spec.p = 100;
  spec.n_discriminative = 20;
  const SimulatedData a = generate(spec);
  spec.p = 150;
  const SimulatedData b = generate(spec);
  for (std::size_t j = 0; j < 20; ++j) {
    CHECK(std::equal(a.train.column(j).begin(), a.train.column(j).end(), b.train.column(j).begin()));
  }
}

TEST_CASE("truth layout and labels") {
  SimulationSpec spec;
  spec.p = 37;
  spec.n_discriminative = 5;
  spec.n_train = 4;
  const SimulatedData d = generate(spec);
  CHECK(d.truth.size() == 37);
  CHECK(std::accumulate(d.truth.begin(), d.truth.end(), 0) == 5);
  for (std::size_t j = 0; j < 5; ++j) CHECK(d.truth[j] == 1);
  CHECK(d.train.group_size(1) >= 2);
  CHECK(d.train.group_size(0) >= 2);
  CHECK(d.train.name(0) == "V1");
  const auto layout = noise_layout(spec);
  CHECK(layout.size() == 32);
  for (int f = 0; f < 9; ++f) {
    const auto count = std::count(layout.begin(), layout.end(), f);
    CHECK(count >= 3);
    CHECK(count <= 4);
  }
  SimulationSpec bad;
  bad.setting = 7;
  CHECK_THROWS_AS(generate(bad), InputError);
  bad = SimulationSpec{};
  bad.n_discriminative = 501;
  CHECK_THROWS_AS(generate(bad), InputError);
}

TEST_CASE("test labels are roughly balanced") {
  SimulationSpec spec;
  spec.p = 1;
  spec.n_discriminative = 1;
  spec.n_test = 20000;
  const SimulatedData d = generate(spec);
  const double share = static_cast<double>(d.test.group_size(1)) / 20000.0;
  CHECK(std::abs(share - 0.5) < 3.0 * 0.5 / std::sqrt(20000.0));
}

TEST_CASE("moments of the discriminative distributions") {
  const std::size_t n = 1000000;
  SUBCASE("Sim 2 group 1 mean") {
    const auto x = sample(discriminative_distribution(2, 1), n, 1);
    CHECK(std::abs(mean(x) - 0.7) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("Sim 6 group 0 mean") {
    const auto x = sample(discriminative_distribution(6, 0), n, 2);
    CHECK(std::abs(mean(x) - 0.5) < 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
    const auto y = sample(discriminative_distribution(6, 1), n, 3);
    CHECK(std::abs(mean(y) - 1.0 / 6.0) < 3.0 / 6.0 / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("Sim 1 trimodal variance") {
    // 0.9 (0.6² + 1.2²) + 0.1 · 0.25²
    const double analytic = 0.9 * (0.36 + 1.44) + 0.1 * 0.0625;
    const auto x = sample(discriminative_distribution(1, 1), n, 4);
    CHECK(std::abs(variance(x) / analytic - 1.0) < 0.01);
  }
  SUBCASE("Gamma noise family has mean shape/rate") {
    const auto x = sample(noise_families()[2], n, 5);
    CHECK(std::abs(mean(x) - 1.0) < 3.0 * std::sqrt(0.5) / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(variance(x) - 0.5) < 0.01);
  }
  SUBCASE("Student t variance is dof/(dof-2)") {
    const auto x = sample(Mixture{{1.0}, {{ComponentKind::StudentT, 10.0, 0.0}}}, n, 6);
    CHECK(std::abs(variance(x) - 1.25) < 0.02);
  }
}

TEST_CASE("mixture sampler") {
  const Component spike_lo{ComponentKind::Point, -1.0, 0.0};
  const Component spike_hi{ComponentKind::Point, 1.0, 0.0};
  const auto x = sample(Mixture{{0.5, 0.5}, {spike_lo, spike_hi}}, 200000, 7);
  CHECK(std::abs(mean(x)) < 3.0 / std::sqrt(200000.0));

  Rng a(8), b(8);
  const Component n01{ComponentKind::Normal, 0.0, 1.0};
  CHECK(mixture_sample(Mixture{{1.0}, {n01}}, a) == draw(n01, b));

  Rng rng(1);
  CHECK_THROWS_AS(mixture_sample(Mixture{{0.5, 0.6}, {spike_lo, spike_hi}}, rng), InputError);
  CHECK_THROWS_AS(mixture_sample(Mixture{{1.0}, {spike_lo, spike_hi}}, rng), InputError);
  CHECK_NOTHROW(mixture_sample(Mixture{{0.5, 0.5 + 1e-13}, {spike_lo, spike_hi}}, rng));
}

TEST_CASE("independent draws from one generator pass the KS test") {
  std::vector<Mixture> all;
  for (int s = 1; s <= 6; ++s) {
    all.push_back(discriminative_distribution(s, 0));
    all.push_back(discriminative_distribution(s, 1));
  }
  for (const auto& f : noise_families()) all.push_back(f);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto a = sample(all[k], 4000, 500 + k, 1);
    const auto b = sample(all[k], 3000, 500 + k, 2);
    CHECK(stats::ks_two_sample(a, b).p_value > 0.01);
  }
}

TEST_CASE("discriminative groups actually differ") {
  for (int s = 1; s <= 6; ++s) {
    const auto a = sample(discriminative_distribution(s, 0), 20000, 70, 1);
    const auto b = sample(discriminative_distribution(s, 1), 20000, 70, 2);
    CHECK(stats::ks_two_sample(a, b).p_value < 1e-6);
  }
}
