#include "vnpda/cvb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vnpda/errors.hpp"
#include "vnpda/parallel.hpp"
#include "vnpda/stats.hpp"

namespace vnpda {

void validate(const Hyperparameters& hyper) {
  if (!(hyper.a_y > 0.0) || !(hyper.b_y > 0.0)) {
    throw InputError("hyperparameters a_y and b_y must be positive");
  }
  if (!(hyper.u > 1.0) || !std::isfinite(hyper.u)) {
    throw InputError("complexity prior exponent u must be greater than 1");
  }
}

double open_expit(double eta) {
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  return std::min(stats::expit(std::clamp(eta, -kMaxAbsLogit, kMaxAbsLogit)), kBelowOne);
}

double selection_penalty(double others, std::size_t p, double u) {
  const double pd = static_cast<double>(p);
  const double denom = std::pow(pd, u) + pd - others - 1.0;
  if (!(denom > 0.0)) {
    throw ContractViolation("selection penalty: p^u + p - sum(omega_-j) - 1 must be positive");
  }
  return std::log1p(others) - std::log(denom);
}

SelectionState update_omega(std::span<const double> log_bf, const Hyperparameters& hyper,
                            const OmegaOptions& options) {
  const std::vector<double> initial(log_bf.size(), options.initial);
  return update_omega(log_bf, hyper, options, initial);
}

SelectionState update_omega(std::span<const double> log_bf, const Hyperparameters& hyper,
                            const OmegaOptions& options, std::span<const double> initial) {
  validate(hyper);
  const std::size_t p = log_bf.size();
  if (p == 0) throw InputError("update_omega: need at least one variable");
  if (initial.size() != p) throw InputError("update_omega: initial omega has the wrong length");
  if (!(options.tol > 0.0)) throw InputError("update_omega: tolerance must be positive");
  if (options.max_iter < 1) throw InputError("update_omega: max_iter must be at least 1");

  const double pd = static_cast<double>(p);
  const double budget = std::pow(pd, hyper.u) + pd - 1.0;

  SelectionState state;
  state.omega.assign(initial.begin(), initial.end());
  std::vector<double>& omega = state.omega;
  for (int t = 1; t <= options.max_iter; ++t) {
    double total = std::accumulate(omega.begin(), omega.end(), 0.0);
    double change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double others = std::max(0.0, total - omega[j]);
      const double denom = budget - others;
      if (!(denom > 0.0)) {
        throw ContractViolation(
            "update_omega: p^u + p - sum(omega_-j) - 1 must be positive");
      }
      const double eta = log_bf[j] + std::log1p(others) - std::log(denom);
      const double next = open_expit(eta);
      change += (next - omega[j]) * (next - omega[j]);
      omega[j] = next;
      total = others + next;
    }
    state.iterations = t;
    state.last_change = change;
    if (change <= options.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

double log_path_probability(const PathCode& leaf, const CellCounts& counts, int group,
                            double c) {
  if (group != 0 && group != 1) throw InputError("path probability: group must be 0 or 1");
  if (leaf.length() != counts.depth()) {
    throw ContractViolation("path probability: path depth differs from the tree depth");
  }
  double total = 0.0;
  double parent = counts.root().group(group);
  for (int l = 0; l < counts.depth(); ++l) {
    const double child = counts.at(leaf.prefix(l + 1)).group(group);
    const double a = child_alpha(l, c);
    total += std::log(a + child) - std::log(2.0 * a + parent);
    parent = child;
  }
  return total;
}

double log_probability_ratio(const PathCode& leaf, const CellCounts& counts, double c) {
  return log_path_probability(leaf, counts, 1, c) - log_path_probability(leaf, counts, 0, c);
}

double path_probability(double x, const CellCounts& counts, int group,
                        const PolyaTreeSpec& spec) {
  validate(spec);
  return std::exp(log_path_probability(path_of(x, spec), counts, group, spec.c));
}

PreparedTraining::PreparedTraining(const Dataset& data, std::optional<int> depth,
                                   unsigned threads)
    : data_(&data) {
  if (!data.has_labels()) throw InputError("training data must be labelled");
  if (data.n() == 0 || data.p() == 0) throw InputError("training data is empty");
  n1_ = data.group_size(1);
  n0_ = data.group_size(0);
  if (n1_ == 0 || n0_ == 0) throw InputError("training data must contain both groups");
  depth_ = depth.value_or(default_depth(data.n()));
  if (depth_ < 1 || depth_ > kMaxDepth) throw InputError("tree depth out of range");

  variables_.resize(data.p());
  parallel_for(data.p(), threads, [&](std::size_t j) {
    VariableSummary& v = variables_[j];
    const auto column = data.column(j);
    v.centring = fit_centring(column);
    v.leaves.reserve(column.size());
    for (double x : column) v.leaves.push_back(path_of(x, v.centring.centring, depth_));
    v.counts = CellCounts::from_leaves(v.leaves, data.labels(), depth_);
    v.terms = BayesFactorTerms(v.counts);
  });
}

FittedModel fit(const PreparedTraining& prepared, std::span<const double> c,
                const Hyperparameters& hyper, const FitOptions& options) {
  validate(hyper);
  if (c.size() != prepared.p()) {
    throw InputError("fit: need one smoothing parameter per variable");
  }
  FittedModel model;
  model.hyper = hyper;
  model.n1 = prepared.n1();
  model.n0 = prepared.n0();
  model.variables.resize(prepared.p());
  std::vector<double> log_bf(prepared.p());
  parallel_for(prepared.p(), options.threads, [&](std::size_t j) {
    if (!(c[j] > 0.0) || !std::isfinite(c[j])) {
      throw InputError("fit: smoothing parameters must be positive");
    }
    const VariableSummary& summary = prepared.variable(j);
    VariableModel& v = model.variables[j];
    v.name = prepared.data().name(j);
    v.tree = PolyaTreeSpec{summary.centring.centring, c[j], prepared.depth()};
    v.degenerate = summary.centring.degenerate;
    v.counts = summary.counts;
    v.log_bf = summary.terms.log_bayes_factor(c[j]);
    log_bf[j] = v.log_bf;
  });
  model.selection = update_omega(log_bf, hyper, options.omega);
  return model;
}

FittedModel fit(const Dataset& train, std::span<const double> c,
                const Hyperparameters& hyper, const FitOptions& options) {
  const PreparedTraining prepared(train, options.depth, options.threads);
  return fit(prepared, c, hyper, options);
}

ClassProbabilities update_psi(const FittedModel& model, const Dataset& points,
                              unsigned threads) {
  validate(model.hyper);
  if (points.p() != model.p()) {
    throw InputError("predict: data has " + std::to_string(points.p()) +
                     " variables but the model has " + std::to_string(model.p()));
  }
  if (model.selection.omega.size() != model.p()) {
    throw ContractViolation("predict: model omega is not aligned with its variables");
  }
  const double prior = std::log((model.hyper.a_y + static_cast<double>(model.n1)) /
                                (model.hyper.b_y + static_cast<double>(model.n0)));
  ClassProbabilities out;
  out.psi.resize(points.n());
  parallel_for(points.n(), threads, [&](std::size_t r) {
    double eta = prior;
    for (std::size_t j = 0; j < model.p(); ++j) {
      const double w = model.selection.omega[j];
      const VariableModel& v = model.variables[j];
      const PathCode leaf = path_of(points.value(r, j), v.tree);
      eta += w * log_probability_ratio(leaf, v.counts, v.tree.c);
    }
    out.psi[r] = open_expit(eta);
  });
  return out;
}

std::vector<int> classify(const ClassProbabilities& psi, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InputError("classification threshold must lie in (0, 1)");
  }
  std::vector<int> labels(psi.psi.size());
  std::transform(psi.psi.begin(), psi.psi.end(), labels.begin(),
                 [threshold](double p) { return p >= threshold ? 1 : 0; });
  return labels;
}

double classification_error(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw InputError("classification_error: label vectors differ in length");
  }
  if (truth.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predicted[i] != truth[i] ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

}  // namespace vnpda
