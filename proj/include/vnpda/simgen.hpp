#ifndef VNPDA_SIMGEN_HPP
#define VNPDA_SIMGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vnpda/dataset.hpp"
#include "vnpda/rng.hpp"

namespace vnpda {

enum class ComponentKind { Normal, Cauchy, Gamma, Exponential, StudentT, Point };

// Normal(a = mean, b = sd), Cauchy(a = location, b = scale),
// Gamma(a = shape, b = rate), Exponential(a = rate), StudentT(a = dof),
// Point(a = value).
struct Component {
  ComponentKind kind = ComponentKind::Normal;
  double a = 0.0;
  double b = 1.0;
};

struct Mixture {
  std::vector<double> weights;
  std::vector<Component> components;
};

double draw(const Component& component, Rng& rng);

/// Picks a component with probability equal to its weight, then draws from
/// it. A one-component mixture is a plain draw. Throws InputError if the
/// weights are negative or do not sum to 1 within 1e-12.
double mixture_sample(const Mixture& mixture, Rng& rng);

/// Group-k distribution of the discriminative variables in settings 1–6.
Mixture discriminative_distribution(int setting, int group);

/// The nine non-discriminative families in layout order: t₁, Cauchy(0,2),
/// Gamma(2, rate 2), Exp(1), N(0,5²), N(0,1), zero-inflated, multi-modal,
/// bi-normal.
const std::vector<Mixture>& noise_families();

struct SimulationSpec {
  int setting = 1;
  std::size_t n_train = 100;
  std::size_t n_test = 1000;
  std::size_t p = 500;
  std::size_t n_discriminative = 50;
  std::uint64_t seed = 0;
};

void validate(const SimulationSpec& spec);

/// Noise family of each non-discriminative column, split as evenly as
/// possible with earlier families taking the remainder.
std::vector<int> noise_layout(const SimulationSpec& spec);

struct SimulatedData {
  Dataset train;
  Dataset test;
  std::vector<int> truth;  // 1 for the leading n_discriminative variables
};

/// Labels are Bernoulli(1/2), redrawn until each group has at least two
/// members. Column j draws from its own substream of the seed, so changing p
/// leaves shared columns untouched.
SimulatedData generate(const SimulationSpec& spec);

}  // namespace vnpda

#endif  // VNPDA_SIMGEN_HPP
