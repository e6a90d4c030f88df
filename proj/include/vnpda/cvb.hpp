#ifndef VNPDA_CVB_HPP
#define VNPDA_CVB_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnpda/bnp_test.hpp"
#include "vnpda/dataset.hpp"
#include "vnpda/polya_tree.hpp"

namespace vnpda {

struct Hyperparameters {
  double a_y = 1.0;  // Beta(a_y, b_y) prior on the group-1 proportion
  double b_y = 1.0;
  double u = 1.5;    // complexity prior Beta(1, p^u) on the selection proportion
};

/// Throws InputError unless a_y, b_y > 0 and u > 1.
void validate(const Hyperparameters& hyper);

struct SelectionState {
  std::vector<double> omega;  // q(γ_j = 1)
  int iterations = 0;         // completed sweeps
  bool converged = false;
  double last_change = 0.0;   // ‖ω(t) − ω(t−1)‖² of the final sweep
};

struct OmegaOptions {
  double tol = 1e-6;
  int max_iter = 1000;
  double initial = 0.5;
};

// η is clamped to this magnitude so ω never rounds to exactly 0. Above
// η ≈ 37 expit rounds to 1, so probabilities are also capped just below 1.
inline constexpr double kMaxAbsLogit = 700.0;

/// expit(clamp(η)) kept inside the open interval (0, 1).
double open_expit(double eta);

/// Coordinate ascent for the selection probabilities. Sweeps j = 1..p in
/// order, each ω_j set to expit of its log Bayes factor plus the
/// complexity-prior penalty given the current ω_{−j}, until the squared
/// change of a full sweep is at most tol or max_iter sweeps have run.
SelectionState update_omega(std::span<const double> log_bf, const Hyperparameters& hyper,
                            const OmegaOptions& options = {});
SelectionState update_omega(std::span<const double> log_bf, const Hyperparameters& hyper,
                            const OmegaOptions& options, std::span<const double> initial);

/// ln(1 + s) − ln(p^u + p − s − 1) for s = Σ_{i≠j} ω_i.
double selection_penalty(double others, std::size_t p, double u);

/// log of the approximate path probability π^{(k)} for a depth-D path:
/// Σ_ℓ ln(α + n_{ε(ℓ+1)}) − ln(2α + n_{ε(ℓ)}) with the new point's own
/// indicator terms dropped.
double log_path_probability(const PathCode& leaf, const CellCounts& counts, int group,
                            double c);

/// ln π^{(1)} − ln π^{(0)}: one variable's contribution to the classification
/// log-odds before weighting by ω_j.
double log_probability_ratio(const PathCode& leaf, const CellCounts& counts, double c);

/// π^{(k)} for an observation x, in (0, 1).
double path_probability(double x, const CellCounts& counts, int group,
                        const PolyaTreeSpec& spec);

struct VariableModel {
  std::string name;
  PolyaTreeSpec tree;     // centring doubles as the standardization parameters
  bool degenerate = false;
  CellCounts counts;
  double log_bf = 0.0;
};

struct FittedModel {
  Hyperparameters hyper;
  std::vector<VariableModel> variables;
  SelectionState selection;
  std::size_t n1 = 0;
  std::size_t n0 = 0;

  std::size_t p() const { return variables.size(); }
};

struct FitOptions {
  OmegaOptions omega;
  std::optional<int> depth;  // default ⌊log₂ n⌋
  unsigned threads = 1;
};

// Per-variable quantities of a training set that do not depend on c:
// centring fit, every training point's leaf path, cell counts and the
// mixed-group split nodes of the Bayes factor.
struct VariableSummary {
  CentringFit centring;
  std::vector<PathCode> leaves;
  CellCounts counts;
  BayesFactorTerms terms;
};

class PreparedTraining {
 public:
  PreparedTraining(const Dataset& data, std::optional<int> depth, unsigned threads);

  const Dataset& data() const { return *data_; }
  int depth() const { return depth_; }
  std::size_t n1() const { return n1_; }
  std::size_t n0() const { return n0_; }
  const VariableSummary& variable(std::size_t j) const { return variables_.at(j); }
  std::size_t p() const { return variables_.size(); }

 private:
  const Dataset* data_;
  int depth_ = 1;
  std::size_t n1_ = 0;
  std::size_t n0_ = 0;
  std::vector<VariableSummary> variables_;
};

/// Fits the model with per-variable smoothing parameters c.
FittedModel fit(const PreparedTraining& prepared, std::span<const double> c,
                const Hyperparameters& hyper, const FitOptions& options = {});
FittedModel fit(const Dataset& train, std::span<const double> c,
                const Hyperparameters& hyper, const FitOptions& options = {});

struct ClassProbabilities {
  std::vector<double> psi;  // q(y_new = 1)
};

/// ψ_r = expit[ln((a_y+n₁)/(b_y+n₀)) + Σ_j ω_j ln(π^{(1)}_{rj}/π^{(0)}_{rj})].
/// `points` must have the model's variables in the same order, in raw units.
ClassProbabilities update_psi(const FittedModel& model, const Dataset& points,
                              unsigned threads = 1);

/// Label 1 iff ψ ≥ threshold; threshold must lie in (0, 1).
std::vector<int> classify(const ClassProbabilities& psi, double threshold = 0.5);

/// Fraction of mismatched labels.
double classification_error(std::span<const int> predicted, std::span<const int> truth);

}  // namespace vnpda

#endif  // VNPDA_CVB_HPP
