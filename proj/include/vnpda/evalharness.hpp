#ifndef VNPDA_EVALHARNESS_HPP
#define VNPDA_EVALHARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vnpda/cvb.hpp"
#include "vnpda/dataio.hpp"
#include "vnpda/simgen.hpp"
#include "vnpda/smoothing.hpp"

namespace vnpda {

struct SelectionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  /// (TP + TN) / (P + N).
  double accuracy() const;
};

SelectionCounts selection_counts(std::span<const int> selected, std::span<const int> truth);

/// Variable j is selected iff ω_j ≥ threshold.
std::vector<int> selected_variables(std::span<const double> omega, double threshold = 0.5);

struct PipelineOptions {
  Hyperparameters hyper;
  FitOptions fit;
  std::vector<Ladder> grid = default_grid();
  double selection_threshold = 0.5;
  double classification_threshold = 0.5;
};

struct PipelineResult {
  SmoothingReport report;
  FittedModel model;
};

/// Smoothing-parameter selection followed by the final fit on the same data.
PipelineResult fit_pipeline(const Dataset& train, const PipelineOptions& options);

struct RunMetrics {
  std::string method;
  int rep = 0;
  double classification_error = 0.0;
  double selection_accuracy = 0.0;
  SelectionCounts counts;
  std::vector<int> selected;
  Ladder chosen{};         // VNPDA only
  int iterations = 0;      // VNPDA only
  bool converged = true;   // VNPDA only
  double wall_time = 0.0;  // seconds
};

struct GaussianNaiveBayes {
  std::vector<double> mean1;
  std::vector<double> mean0;
  std::vector<double> variance;  // pooled, floored at 1e-8
  double log_prior_odds = 0.0;

  std::vector<double> log_odds(const Dataset& points) const;
};

GaussianNaiveBayes fit_gaussian_nb(const Dataset& train);

/// Pooled-variance Gaussian naive Bayes on every variable. Classification
/// error on `test`; selection metrics treat every variable as selected.
RunMetrics gaussian_nb_baseline(const Dataset& train, const Dataset& test,
                                std::span<const int> truth = {});

struct StudyOptions {
  SimulationSpec simulation;  // setting and seed; rep r uses seed + r
  int reps = 10;
  PipelineOptions pipeline;
};

struct StudyResult {
  std::vector<RunMetrics> runs;  // VNPDA then baseline for each rep
  std::vector<double> selection_rate;  // per variable, VNPDA, over reps
};

StudyResult run_simulation_study(const StudyOptions& options);

struct MethodSummary {
  std::string method;
  double mean_error = 0.0;
  double median_error = 0.0;
  double mean_accuracy = 0.0;
  double median_accuracy = 0.0;
};

std::vector<MethodSummary> summarize(std::span<const RunMetrics> runs);

struct FoldMetrics {
  int fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double error = 0.0;
  std::vector<int> selected;
  Ladder chosen{};
  double wall_time = 0.0;
};

struct CrossValidationResult {
  std::vector<std::string> names;
  std::vector<FoldMetrics> folds;
  std::vector<double> selection_rate;
  double mean_error = 0.0;
};

/// Train/test datasets of one fold. By default both are standardized with
/// the training fold's moments; `global_standardization` standardizes the
/// whole dataset once before splitting instead.
std::pair<Dataset, Dataset> prepare_fold(const Dataset& data, const Fold& fold,
                                         bool global_standardization);

CrossValidationResult cross_validate(const Dataset& data, int k, std::uint64_t seed,
                                     const PipelineOptions& options,
                                     bool global_standardization = false);

struct ScalingPoint {
  std::size_t n = 0;
  std::size_t p = 0;
  double seconds = 0.0;  // fastest of the repeats
};

/// Times fit_pipeline on simulation-1 data of each size (single-threaded).
std::vector<ScalingPoint> scaling_probe(std::size_t n, std::span<const std::size_t> ps,
                                        std::uint64_t seed, const PipelineOptions& options,
                                        int repeats = 3);

struct DensityRow {
  double x = 0.0;
  double group1 = 0.0;
  double group0 = 0.0;
};

/// Predictive densities of both groups of one variable on an even grid.
std::vector<DensityRow> density_grid(const FittedModel& model, std::size_t variable,
                                     double lower, double upper, std::size_t points);

void write_runs_csv(std::ostream& out, std::span<const RunMetrics> runs, bool timing = false);
void write_selection_rates_csv(std::ostream& out, std::span<const std::string> names,
                               std::span<const double> rates);
void write_study_summary_json(std::ostream& out, const StudyOptions& options,
                              const StudyResult& result);
void write_folds_csv(std::ostream& out, const CrossValidationResult& cv, bool timing = false);
void write_cv_summary_json(std::ostream& out, const CrossValidationResult& cv, int k,
                           std::uint64_t seed);
void write_density_csv(std::ostream& out, std::span<const DensityRow> rows);

}  // namespace vnpda

#endif  // VNPDA_EVALHARNESS_HPP
