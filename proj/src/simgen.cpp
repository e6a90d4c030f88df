#include "vnpda/simgen.hpp"

#include <cmath>
#include <numeric>

#include "vnpda/errors.hpp"

namespace vnpda {

namespace {

Component normal(double mean, double sd) { return {ComponentKind::Normal, mean, sd}; }

Mixture single(Component c) { return Mixture{{1.0}, {c}}; }

// Label streams sit far above any column index.
constexpr std::uint64_t kTrainLabelStream = 0xFFFF'FFFF'0000'0001ULL;
constexpr std::uint64_t kTestLabelStream = 0xFFFF'FFFF'0000'0002ULL;
constexpr std::size_t kMinGroupSize = 2;

Mixture trimodal() {
  return Mixture{{9.0 / 20.0, 9.0 / 20.0, 1.0 / 10.0},
                 {normal(-6.0 / 5.0, 3.0 / 5.0), normal(6.0 / 5.0, 3.0 / 5.0), normal(0.0, 0.25)}};
}

std::vector<int> draw_labels(std::size_t n, Rng& rng) {
  std::vector<int> labels(n);
  while (true) {
    std::size_t ones = 0;
    for (auto& y : labels) {
      y = rng.bernoulli(0.5) ? 1 : 0;
      ones += static_cast<std::size_t>(y);
    }
    if (ones >= kMinGroupSize && n - ones >= kMinGroupSize) return labels;
  }
}

}  // namespace

double draw(const Component& c, Rng& rng) {
  switch (c.kind) {
    case ComponentKind::Normal:
      return rng.normal(c.a, c.b);
    case ComponentKind::Cauchy:
      return rng.cauchy(c.a, c.b);
    case ComponentKind::Gamma:
      return rng.gamma(c.a, c.b);
    case ComponentKind::Exponential:
      return rng.exponential(c.a);
    case ComponentKind::StudentT:
      return rng.student_t(c.a);
    case ComponentKind::Point:
      return c.a;
  }
  throw ContractViolation("draw: unknown component kind");
}

double mixture_sample(const Mixture& mixture, Rng& rng) {
  const auto& w = mixture.weights;
  if (w.empty() || w.size() != mixture.components.size()) {
    throw InputError("mixture: need one weight per component");
  }
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw InputError("mixture: weights must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InputError("mixture: weights must sum to 1");
  if (w.size() == 1) return draw(mixture.components.front(), rng);
  const double u = rng.uniform() * sum;
  double acc = 0.0;
  std::size_t k = 0;
  for (; k + 1 < w.size(); ++k) {
    acc += w[k];
    if (u < acc) break;
  }
  return draw(mixture.components[k], rng);
}

Mixture discriminative_distribution(int setting, int group) {
  if (group != 0 && group != 1) throw InputError("group must be 0 or 1");
  switch (setting) {
    case 1:
      return group == 1 ? trimodal()
                        : Mixture{{2.0 / 3.0, 1.0 / 3.0}, {normal(0.0, 1.0), normal(0.0, 0.1)}};
    case 2:
      return single(group == 1 ? normal(0.7, 1.0) : normal(0.0, 1.0));
    case 3:
      return group == 1 ? Mixture{{0.5, 0.5}, {normal(0.0, 1.0), normal(0.5, 0.001)}}
                        : single(normal(0.0, 1.0));
    case 4:
      return single(group == 1 ? normal(0.0, 1.0) : Component{ComponentKind::Cauchy, 0.0, 3.0});
    case 5:
      return group == 1
                 ? trimodal()
                 : Mixture{{0.5, 0.5}, {normal(-1.0, 2.0 / 3.0), normal(1.0, 2.0 / 3.0)}};
    case 6:
      return single(Component{ComponentKind::Exponential, group == 1 ? 6.0 : 2.0, 0.0});
    default:
      throw InputError("simulation setting must be between 1 and 6, got " +
                       std::to_string(setting));
  }
}

const std::vector<Mixture>& noise_families() {
  static const std::vector<Mixture> families = [] {
    std::vector<Mixture> f;
    f.push_back(single({ComponentKind::StudentT, 1.0, 0.0}));
    f.push_back(single({ComponentKind::Cauchy, 0.0, 2.0}));
    f.push_back(single({ComponentKind::Gamma, 2.0, 2.0}));
    f.push_back(single({ComponentKind::Exponential, 1.0, 0.0}));
    f.push_back(single(normal(0.0, 5.0)));
    f.push_back(single(normal(0.0, 1.0)));
    f.push_back(Mixture{{0.1, 0.9}, {normal(0.0, 1.0), normal(0.0, 0.1)}});
    Mixture modes;
    for (int l = 0; l <= 7; ++l) {
      const double s = std::pow(2.0 / 3.0, l);
      modes.weights.push_back(1.0 / 8.0);
      modes.components.push_back(normal(3.0 * (s - 1.0), s));
    }
    f.push_back(modes);
    f.push_back(Mixture{{0.5, 0.5}, {normal(-1.5, 0.5), normal(1.5, 0.5)}});
    return f;
  }();
  return families;
}

void validate(const SimulationSpec& spec) {
  if (spec.setting < 1 || spec.setting > 6) {
    throw InputError("simulation setting must be between 1 and 6, got " +
                     std::to_string(spec.setting));
  }
  if (spec.p == 0) throw InputError("simulation needs p >= 1");
  if (spec.n_discriminative > spec.p) {
    throw InputError("number of discriminative variables exceeds p");
  }
  if (spec.n_train < 2 * kMinGroupSize || spec.n_test < 2 * kMinGroupSize) {
    throw InputError("simulation needs at least 4 training and 4 test observations");
  }
}

std::vector<int> noise_layout(const SimulationSpec& spec) {
  const std::size_t noise = spec.p - spec.n_discriminative;
  const std::size_t families = noise_families().size();
  const std::size_t base = noise / families;
  const std::size_t extra = noise % families;
  std::vector<int> layout;
  layout.reserve(noise);
  for (std::size_t f = 0; f < families; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    layout.insert(layout.end(), size, static_cast<int>(f));
  }
  return layout;
}

SimulatedData generate(const SimulationSpec& spec) {
  validate(spec);
  Rng train_label_rng(spec.seed, kTrainLabelStream);
  Rng test_label_rng(spec.seed, kTestLabelStream);
  std::vector<int> train_labels = draw_labels(spec.n_train, train_label_rng);
  std::vector<int> test_labels = draw_labels(spec.n_test, test_label_rng);

  const std::array<Mixture, 2> groups = {discriminative_distribution(spec.setting, 0),
                                         discriminative_distribution(spec.setting, 1)};
  const std::vector<int> layout = noise_layout(spec);
  std::vector<std::string> names(spec.p);
  std::vector<std::vector<double>> train_cols(spec.p);
  std::vector<std::vector<double>> test_cols(spec.p);
  std::vector<int> truth(spec.p, 0);
  for (std::size_t j = 0; j < spec.p; ++j) {
    names[j] = "V" + std::to_string(j + 1);
    Rng rng(spec.seed, j);
    auto fill = [&](const std::vector<int>& labels, std::vector<double>& col) {
      col.resize(labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (j < spec.n_discriminative) {
          col[i] = mixture_sample(groups[static_cast<std::size_t>(labels[i])], rng);
        } else {
          const auto family = static_cast<std::size_t>(layout[j - spec.n_discriminative]);
          col[i] = mixture_sample(noise_families()[family], rng);
        }
      }
    };
    fill(train_labels, train_cols[j]);
    fill(test_labels, test_cols[j]);
    truth[j] = j < spec.n_discriminative ? 1 : 0;
  }
  return SimulatedData{Dataset(names, std::move(train_cols), std::move(train_labels)),
                       Dataset(names, std::move(test_cols), std::move(test_labels)),
                       std::move(truth)};
}

}  // namespace vnpda
