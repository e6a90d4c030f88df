#include "vnpda/evalharness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "vnpda/errors.hpp"
#include "vnpda/polya_tree.hpp"

namespace vnpda {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double mean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::string ladder_string(const Ladder& ladder) {
  std::string s;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (i) s += ';';
    s += format_real(ladder[i]);
  }
  return s;
}

nlohmann::ordered_json ladder_json(const Ladder& ladder) {
  return nlohmann::ordered_json(std::vector<double>(ladder.begin(), ladder.end()));
}

void accumulate_rates(std::vector<double>& rates, std::span<const int> selected) {
  for (std::size_t j = 0; j < selected.size(); ++j) rates[j] += selected[j];
}

}  // namespace

double SelectionCounts::accuracy() const {
  const std::size_t total = tp + tn + fp + fn;
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(tp + tn) / static_cast<double>(total);
}

SelectionCounts selection_counts(std::span<const int> selected, std::span<const int> truth) {
  if (selected.size() != truth.size()) {
    throw InputError("selection and truth have different lengths");
  }
  SelectionCounts c;
  for (std::size_t j = 0; j < selected.size(); ++j) {
    const bool s = selected[j] != 0;
    const bool t = truth[j] != 0;
    if (s && t) ++c.tp;
    else if (!s && !t) ++c.tn;
    else if (s) ++c.fp;
    else ++c.fn;
  }
  return c;
}

std::vector<int> selected_variables(std::span<const double> omega, double threshold) {
  std::vector<int> out(omega.size());
  for (std::size_t j = 0; j < omega.size(); ++j) out[j] = omega[j] >= threshold ? 1 : 0;
  return out;
}

PipelineResult fit_pipeline(const Dataset& train, const PipelineOptions& options) {
  const PreparedTraining prepared(train, options.fit.depth, options.fit.threads);
  SmoothingOptions sopt;
  sopt.omega = options.fit.omega;
  sopt.threshold = options.classification_threshold;
  sopt.threads = options.fit.threads;
  PipelineResult result;
  result.report = select_c(prepared, options.hyper, options.grid, sopt);
  const std::vector<double> c = result.report.smoothing();
  result.model = fit(prepared, c, options.hyper, options.fit);
  return result;
}

std::vector<double> GaussianNaiveBayes::log_odds(const Dataset& points) const {
  if (points.p() != variance.size()) {
    throw InputError("dataset has " + std::to_string(points.p()) + " variables, model has " +
                     std::to_string(variance.size()));
  }
  std::vector<double> out(points.n(), log_prior_odds);
  for (std::size_t j = 0; j < points.p(); ++j) {
    const auto col = points.column(j);
    const double inv = 0.5 / variance[j];
    for (std::size_t i = 0; i < points.n(); ++i) {
      const double d1 = col[i] - mean1[j];
      const double d0 = col[i] - mean0[j];
      out[i] += (d0 * d0 - d1 * d1) * inv;
    }
  }
  return out;
}

GaussianNaiveBayes fit_gaussian_nb(const Dataset& train) {
  if (!train.has_labels()) throw InputError("training data needs labels");
  const std::size_t n1 = train.group_size(1);
  const std::size_t n0 = train.group_size(0);
  if (n1 == 0 || n0 == 0) throw InputError("both groups must be present in the training data");
  GaussianNaiveBayes nb;
  const std::size_t p = train.p();
  nb.mean1.assign(p, 0.0);
  nb.mean0.assign(p, 0.0);
  nb.variance.assign(p, 0.0);
  nb.log_prior_odds = std::log(static_cast<double>(n1) / static_cast<double>(n0));
  const auto labels = train.labels();
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = train.column(j);
    double s1 = 0.0, s0 = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) (labels[i] ? s1 : s0) += col[i];
    const double m1 = s1 / static_cast<double>(n1);
    const double m0 = s0 / static_cast<double>(n0);
    double ss = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) {
      const double d = col[i] - (labels[i] ? m1 : m0);
      ss += d * d;
    }
    const double dof = train.n() > 2 ? static_cast<double>(train.n() - 2) : 1.0;
    nb.mean1[j] = m1;
    nb.mean0[j] = m0;
    nb.variance[j] = std::max(ss / dof, 1e-8);
  }
  return nb;
}

RunMetrics gaussian_nb_baseline(const Dataset& train, const Dataset& test,
                                std::span<const int> truth) {
  const auto start = Clock::now();
  const GaussianNaiveBayes nb = fit_gaussian_nb(train);
  const std::vector<double> odds = nb.log_odds(test);
  std::vector<int> predicted(odds.size());
  for (std::size_t i = 0; i < odds.size(); ++i) predicted[i] = odds[i] >= 0.0 ? 1 : 0;
  RunMetrics m;
  m.method = "gnb";
  m.classification_error = classification_error(predicted, test.labels());
  m.selected.assign(train.p(), 1);
  if (!truth.empty()) {
    m.counts = selection_counts(m.selected, truth);
    m.selection_accuracy = m.counts.accuracy();
  } else {
    m.selection_accuracy = std::numeric_limits<double>::quiet_NaN();
  }
  m.wall_time = seconds_since(start);
  return m;
}

StudyResult run_simulation_study(const StudyOptions& options) {
  if (options.reps < 0) throw InputError("number of replicates must be non-negative");
  validate(options.simulation);
  StudyResult result;
  result.selection_rate.assign(options.simulation.p, 0.0);
  if (options.reps == 0) {
    result.selection_rate.clear();
    return result;
  }
  for (int r = 0; r < options.reps; ++r) {
    SimulationSpec spec = options.simulation;
    spec.seed = options.simulation.seed + static_cast<std::uint64_t>(r);
    const SimulatedData data = generate(spec);

    const auto start = Clock::now();
    const PipelineResult fitted = fit_pipeline(data.train, options.pipeline);
    const ClassProbabilities psi = update_psi(fitted.model, data.test, options.pipeline.fit.threads);
    const std::vector<int> predicted = classify(psi, options.pipeline.classification_threshold);
    RunMetrics m;
    m.method = "vnpda";
    m.rep = r;
    m.classification_error = classification_error(predicted, data.test.labels());
    m.selected = selected_variables(fitted.model.selection.omega,
                                    options.pipeline.selection_threshold);
    m.counts = selection_counts(m.selected, data.truth);
    m.selection_accuracy = m.counts.accuracy();
    m.chosen = fitted.report.chosen;
    m.iterations = fitted.model.selection.iterations;
    m.converged = fitted.model.selection.converged;
    m.wall_time = seconds_since(start);
    accumulate_rates(result.selection_rate, m.selected);
    result.runs.push_back(std::move(m));

    RunMetrics baseline = gaussian_nb_baseline(data.train, data.test, data.truth);
    baseline.rep = r;
    result.runs.push_back(std::move(baseline));
  }
  for (double& rate : result.selection_rate) rate /= options.reps;
  return result;
}

std::vector<MethodSummary> summarize(std::span<const RunMetrics> runs) {
  std::vector<MethodSummary> out;
  std::vector<std::string> methods;
  for (const auto& r : runs) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
  }
  for (const auto& method : methods) {
    std::vector<double> err, acc;
    for (const auto& r : runs) {
      if (r.method != method) continue;
      err.push_back(r.classification_error);
      acc.push_back(r.selection_accuracy);
    }
    MethodSummary s;
    s.method = method;
    s.mean_error = mean(err);
    s.median_error = median(err);
    s.mean_accuracy = mean(acc);
    s.median_accuracy = median(acc);
    out.push_back(s);
  }
  return out;
}

std::pair<Dataset, Dataset> prepare_fold(const Dataset& data, const Fold& fold,
                                         bool global_standardization) {
  if (global_standardization) {
    const Dataset standardized = apply_standardization(data, fit_standardization(data));
    return {standardized.select_rows(fold.train), standardized.select_rows(fold.test)};
  }
  const Dataset train = data.select_rows(fold.train);
  const Dataset test = data.select_rows(fold.test);
  const std::vector<Standardization> params = fit_standardization(train);
  return {apply_standardization(train, params), apply_standardization(test, params)};
}

CrossValidationResult cross_validate(const Dataset& data, int k, std::uint64_t seed,
                                     const PipelineOptions& options,
                                     bool global_standardization) {
  const std::vector<Fold> folds = split_folds(data, k, seed);
  CrossValidationResult cv;
  cv.names = data.names();
  cv.selection_rate.assign(data.p(), 0.0);
  double total = 0.0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto start = Clock::now();
    const auto [train, test] = prepare_fold(data, folds[f], global_standardization);
    const PipelineResult fitted = fit_pipeline(train, options);
    const ClassProbabilities psi = update_psi(fitted.model, test, options.fit.threads);
    const std::vector<int> predicted = classify(psi, options.classification_threshold);
    FoldMetrics m;
    m.fold = static_cast<int>(f);
    m.n_train = train.n();
    m.n_test = test.n();
    m.error = classification_error(predicted, test.labels());
    m.selected = selected_variables(fitted.model.selection.omega, options.selection_threshold);
    m.chosen = fitted.report.chosen;
    m.wall_time = seconds_since(start);
    accumulate_rates(cv.selection_rate, m.selected);
    total += m.error;
    cv.folds.push_back(std::move(m));
  }
  for (double& rate : cv.selection_rate) rate /= static_cast<double>(folds.size());
  cv.mean_error = total / static_cast<double>(folds.size());
  return cv;
}

std::vector<ScalingPoint> scaling_probe(std::size_t n, std::span<const std::size_t> ps,
                                        std::uint64_t seed, const PipelineOptions& options,
                                        int repeats) {
  if (repeats < 1) throw InputError("repeats must be at least 1");
  if (n < 4) throw InputError("scaling probe needs n >= 4");
  PipelineOptions single = options;
  single.fit.threads = 1;
  std::vector<ScalingPoint> out;
  for (std::size_t p : ps) {
    if (p == 0) throw InputError("scaling probe needs p >= 1");
    SimulationSpec spec;
    spec.setting = 1;
    spec.n_train = n;
    spec.n_test = 4;
    spec.p = p;
    spec.n_discriminative = std::min<std::size_t>(50, p);
    spec.seed = seed;
    const SimulatedData data = generate(spec);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      const auto start = Clock::now();
      const PipelineResult fitted = fit_pipeline(data.train, single);
      best = std::min(best, seconds_since(start));
    }
    out.push_back({n, p, best});
  }
  return out;
}

std::vector<DensityRow> density_grid(const FittedModel& model, std::size_t variable,
                                     double lower, double upper, std::size_t points) {
  if (variable >= model.p()) throw InputError("variable index out of range");
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw InputError("density range must satisfy lower < upper");
  }
  if (points < 2) throw InputError("density grid needs at least 2 points");
  const VariableModel& v = model.variables[variable];
  std::vector<DensityRow> rows(points);
  const double step = (upper - lower) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? upper : lower + step * static_cast<double>(i);
    rows[i] = {x, predictive_density(x, v.counts, 1, v.tree), predictive_density(x, v.counts, 0, v.tree)};
  }
  return rows;
}

void write_runs_csv(std::ostream& out, std::span<const RunMetrics> runs, bool timing) {
  out << "rep,method,classification_error,selection_accuracy,tp,tn,fp,fn,n_selected,c,"
         "iterations,converged";
  if (timing) out << ",seconds";
  out << '\n';
  for (const auto& r : runs) {
    std::size_t selected = 0;
    for (int s : r.selected) selected += s != 0;
    out << r.rep << ',' << r.method << ',' << format_real(r.classification_error) << ','
        << format_real(r.selection_accuracy) << ',' << r.counts.tp << ',' << r.counts.tn << ','
        << r.counts.fp << ',' << r.counts.fn << ',' << selected << ','
        << (r.method == "vnpda" ? ladder_string(r.chosen) : std::string()) << ','
        << r.iterations << ',' << (r.converged ? 1 : 0);
    if (timing) out << ',' << format_real(r.wall_time);
    out << '\n';
  }
}

void write_selection_rates_csv(std::ostream& out, std::span<const std::string> names,
                               std::span<const double> rates) {
  if (names.size() != rates.size()) throw ContractViolation("names and rates differ in length");
  out << "variable,selection_rate\n";
  for (std::size_t j = 0; j < names.size(); ++j) {
    out << names[j] << ',' << format_real(rates[j]) << '\n';
  }
}

void write_study_summary_json(std::ostream& out, const StudyOptions& options,
                              const StudyResult& result) {
  nlohmann::ordered_json doc;
  doc["format"] = "vnpda-study";
  doc["setting"] = options.simulation.setting;
  doc["reps"] = options.reps;
  doc["seed"] = options.simulation.seed;
  doc["n_train"] = options.simulation.n_train;
  doc["n_test"] = options.simulation.n_test;
  doc["p"] = options.simulation.p;
  doc["n_discriminative"] = options.simulation.n_discriminative;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const auto& s : summarize(result.runs)) {
    nlohmann::ordered_json m;
    m["method"] = s.method;
    m["mean_error"] = s.mean_error;
    m["median_error"] = s.median_error;
    m["mean_selection_accuracy"] = s.mean_accuracy;
    m["median_selection_accuracy"] = s.median_accuracy;
    methods.push_back(std::move(m));
  }
  doc["methods"] = std::move(methods);
  out << doc.dump(2) << '\n';
}

void write_folds_csv(std::ostream& out, const CrossValidationResult& cv, bool timing) {
  out << "fold,n_train,n_test,error,n_selected,c";
  if (timing) out << ",seconds";
  out << '\n';
  for (const auto& f : cv.folds) {
    std::size_t selected = 0;
    for (int s : f.selected) selected += s != 0;
    out << f.fold << ',' << f.n_train << ',' << f.n_test << ',' << format_real(f.error) << ','
        << selected << ',' << ladder_string(f.chosen);
    if (timing) out << ',' << format_real(f.wall_time);
    out << '\n';
  }
}

void write_cv_summary_json(std::ostream& out, const CrossValidationResult& cv, int k,
                           std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["format"] = "vnpda-cv";
  doc["folds"] = k;
  doc["seed"] = seed;
  doc["mean_error"] = cv.mean_error;
  nlohmann::ordered_json per_fold = nlohmann::ordered_json::array();
  for (const auto& f : cv.folds) {
    nlohmann::ordered_json m;
    m["fold"] = f.fold;
    m["error"] = f.error;
    m["c"] = ladder_json(f.chosen);
    per_fold.push_back(std::move(m));
  }
  doc["per_fold"] = std::move(per_fold);
  out << doc.dump(2) << '\n';
}

void write_density_csv(std::ostream& out, std::span<const DensityRow> rows) {
  out << "x,f1,f0\n";
  for (const auto& r : rows) {
    out << format_real(r.x) << ',' << format_real(r.group1) << ',' << format_real(r.group0) << '\n';
  }
}

}  // namespace vnpda
