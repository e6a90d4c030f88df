#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "vnpda/bnp_test.hpp"
#include "vnpda/cvb.hpp"
#include "vnpda/dataio.hpp"
#include "vnpda/errors.hpp"
#include "vnpda/evalharness.hpp"
#include "vnpda/model_io.hpp"
#include "vnpda/parallel.hpp"
#include "vnpda/simgen.hpp"
#include "vnpda/smoothing.hpp"

namespace vnpda::cli {
namespace {

namespace fs = std::filesystem;

struct DataArgs {
  std::string label_column = "label";
  std::string positive_label;
  bool variables_in_rows = false;
  std::optional<double> median_floor;
  std::optional<double> variance_floor;
};

struct ModelArgs {
  double u = 1.5;
  double a_y = 1.0;
  double b_y = 1.0;
  double tol = 1e-6;
  int max_iter = 1000;
  double initial = 0.5;
  int depth = 0;
  std::vector<double> grid{1.0, 5.0, 10.0, 50.0, 100.0};
  double threshold = 0.5;
  double select_threshold = 0.5;
};

struct SimArgs {
  int setting = 1;
  std::size_t n_train = 100;
  std::size_t n_test = 1000;
  std::size_t p = 500;
  std::size_t n_discriminative = 50;
};

struct Args {
  unsigned threads = default_thread_count();
  std::uint64_t seed = 0;
  DataArgs data;
  ModelArgs model;
  SimArgs sim;
  std::string input;
  std::string model_path;
  std::string report_path;
  std::string out = "-";
  std::string out_csv;
  std::string out_dir = ".";
  std::optional<double> constant_c;
  double bf_c = 1.0;
  int k = 5;
  int reps = 10;
  bool paper_protocol = false;
  bool timing = false;
  std::string variable;
  std::optional<double> lower;
  std::optional<double> upper;
  std::size_t points = 401;
  std::size_t bench_n = 100;
  std::vector<std::size_t> bench_p{250, 500, 1000, 2000};
  int repeats = 3;
};

const CLI::Validator kGreaterThanOne(
    [](std::string& s) -> std::string {
      try {
        if (std::stod(s) > 1.0) return {};
      } catch (const std::exception&) {
      }
      return "must be a number greater than 1";
    },
    "> 1");

const CLI::Validator kOpenUnit(
    [](std::string& s) -> std::string {
      try {
        const double v = std::stod(s);
        if (v > 0.0 && v < 1.0) return {};
      } catch (const std::exception&) {
      }
      return "must lie strictly between 0 and 1";
    },
    "(0,1)");

const CLI::Validator kSmoothingRange(
    [](std::string& s) -> std::string {
      try {
        const double v = std::stod(s);
        if (v > 0.0 && v <= kMaxSmoothing) return {};
      } catch (const std::exception&) {
      }
      return "must lie in (0, 100]";
    },
    "(0,100]");

void add_data_options(CLI::App& app, DataArgs& d) {
  app.add_option("--label-column", d.label_column, "Name of the label column");
  app.add_option("--positive-label", d.positive_label,
                 "Label value coded as group 1 (auto: 1 for 0/1 labels, else the largest)")
      ->default_str("auto");
  app.add_flag("--variables-in-rows", d.variables_in_rows,
               "Input has one variable per row and one sample per column");
  app.add_option("--median-floor", d.median_floor,
                 "Drop variables whose median is at or below this value")
      ->default_str("none");
  app.add_option("--variance-floor", d.variance_floor,
                 "Drop variables whose variance is at or below this value")
      ->default_str("none");
}

void add_model_options(CLI::App& app, ModelArgs& m, bool with_grid) {
  app.add_option("--u", m.u, "Complexity prior exponent, Beta(1, p^u)")->check(kGreaterThanOne);
  app.add_option("--a-y", m.a_y, "Beta prior on the group-1 proportion, first shape")
      ->check(CLI::PositiveNumber);
  app.add_option("--b-y", m.b_y, "Beta prior on the group-1 proportion, second shape")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", m.tol, "Convergence tolerance on the squared change of omega")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", m.max_iter, "Maximum number of omega sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--init", m.initial, "Initial value of every omega")->check(CLI::Range(0.0, 1.0));
  app.add_option("--depth", m.depth, "Tree depth (0 selects floor(log2 n))")
      ->check(CLI::Range(0, kMaxDepth));
  app.add_option("--threshold", m.threshold, "Classify as group 1 when psi >= threshold")
      ->check(kOpenUnit);
  app.add_option("--select-threshold", m.select_threshold,
                 "A variable counts as selected when omega >= this value")
      ->check(kOpenUnit);
  if (with_grid) {
    app.add_option("--grid", m.grid, "Candidate smoothing values; ladders are their monotone 4-tuples")
        ->delimiter(',')
        ->check(kSmoothingRange);
  }
}

void add_sim_options(CLI::App& app, SimArgs& s) {
  app.add_option("--setting", s.setting, "Simulation setting")->check(CLI::Range(1, 6));
  app.add_option("--n-train", s.n_train, "Training sample size");
  app.add_option("--n-test", s.n_test, "Test sample size");
  app.add_option("--p", s.p, "Number of variables");
  app.add_option("--n-discriminative", s.n_discriminative,
                 "Number of leading discriminative variables");
}

LoadOptions load_options(const DataArgs& d, bool labels_required) {
  LoadOptions o;
  o.label_column = d.label_column;
  o.orientation = d.variables_in_rows ? Orientation::VariablesInRows : Orientation::SamplesInRows;
  if (!d.positive_label.empty()) o.positive_label = d.positive_label;
  o.labels_required = labels_required;
  return o;
}

Dataset load(const std::string& path, const DataArgs& d, bool labels_required) {
  Dataset data = load_csv(path, load_options(d, labels_required));
  if (d.median_floor || d.variance_floor) {
    data = preprocess(data, PreprocessOptions{d.median_floor, d.variance_floor});
  }
  return data;
}

Hyperparameters hyperparameters(const ModelArgs& m) {
  Hyperparameters h;
  h.a_y = m.a_y;
  h.b_y = m.b_y;
  h.u = m.u;
  validate(h);
  return h;
}

OmegaOptions omega_options(const ModelArgs& m) {
  return OmegaOptions{m.tol, m.max_iter, m.initial};
}

PipelineOptions pipeline_options(const Args& a) {
  PipelineOptions o;
  o.hyper = hyperparameters(a.model);
  o.fit.omega = omega_options(a.model);
  if (a.model.depth > 0) o.fit.depth = a.model.depth;
  o.fit.threads = a.threads;
  o.grid = monotone_grid(a.model.grid);
  o.classification_threshold = a.model.threshold;
  o.selection_threshold = a.model.select_threshold;
  return o;
}

SmoothingOptions smoothing_options(const Args& a) {
  SmoothingOptions o;
  o.omega = omega_options(a.model);
  o.threshold = a.model.threshold;
  o.threads = a.threads;
  return o;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path() && !fs::exists(path.parent_path())) {
    throw InputError("output directory does not exist: " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path.string());
  return out;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out = open_output(path);
  writer(out);
  out.flush();
  if (!out) throw InputError("failed writing " + path.string());
}

template <typename Writer>
void write_to(const std::string& path, std::ostream& fallback, Writer&& writer) {
  if (path == "-") {
    writer(fallback);
  } else {
    write_file(path, writer);
  }
}

fs::path output_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

SimulationSpec simulation_spec(const SimArgs& s, std::uint64_t seed) {
  SimulationSpec spec;
  spec.setting = s.setting;
  spec.n_train = s.n_train;
  spec.n_test = s.n_test;
  spec.p = s.p;
  spec.n_discriminative = s.n_discriminative;
  spec.seed = seed;
  validate(spec);
  return spec;
}

// ---- subcommands ----

int cmd_simulate(const Args& a, std::ostream& out) {
  const SimulatedData data = generate(simulation_spec(a.sim, a.seed));
  const fs::path dir = output_dir(a.out_dir);
  save_csv(dir / "train.csv", data.train);
  save_csv(dir / "test.csv", data.test);
  write_file(dir / "truth.csv", [&](std::ostream& o) {
    o << "variable,discriminative\n";
    for (std::size_t j = 0; j < data.truth.size(); ++j) {
      o << data.train.name(j) << ',' << data.truth[j] << '\n';
    }
  });
  out << "wrote " << (dir / "train.csv").string() << ", " << (dir / "test.csv").string() << ", "
      << (dir / "truth.csv").string() << '\n';
  return kExitOk;
}

int cmd_select_c(const Args& a, std::ostream& out) {
  const Dataset train = load(a.input, a.data, true);
  const PreparedTraining prepared(train, a.model.depth > 0 ? std::optional<int>(a.model.depth)
                                                           : std::nullopt,
                                  a.threads);
  const std::vector<Ladder> grid = monotone_grid(a.model.grid);
  const SmoothingReport report =
      select_c(prepared, hyperparameters(a.model), grid, smoothing_options(a));
  write_to(a.out, out, [&](std::ostream& o) { write_report_json(o, report); });
  if (!a.out_csv.empty()) {
    write_file(a.out_csv, [&](std::ostream& o) { write_report_csv(o, report); });
  }
  if (a.out != "-") {
    out << "c = " << format_real(report.chosen[0]) << ',' << format_real(report.chosen[1]) << ','
        << format_real(report.chosen[2]) << ',' << format_real(report.chosen[3])
        << "  resubstitution_error = " << format_real(report.chosen_error) << '\n';
  }
  return kExitOk;
}

std::vector<double> smoothing_from_report(const std::string& path, const Dataset& train) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open smoothing report: " + path);
  const SmoothingReport report = read_report_json(in);
  if (report.names != train.names()) {
    throw InputError("smoothing report variables do not match the training data: " + path);
  }
  return report.smoothing();
}

int cmd_fit(const Args& a, std::ostream& out) {
  const Dataset train = load(a.input, a.data, true);
  FitOptions fopt;
  fopt.omega = omega_options(a.model);
  if (a.model.depth > 0) fopt.depth = a.model.depth;
  fopt.threads = a.threads;
  const Hyperparameters hyper = hyperparameters(a.model);
  const PreparedTraining prepared(train, fopt.depth, a.threads);
  std::vector<double> c;
  if (a.constant_c) {
    c.assign(train.p(), *a.constant_c);
  } else if (!a.report_path.empty()) {
    c = smoothing_from_report(a.report_path, train);
  } else {
    const std::vector<Ladder> grid = monotone_grid(a.model.grid);
    c = select_c(prepared, hyper, grid, smoothing_options(a)).smoothing();
  }
  const FittedModel model = fit(prepared, c, hyper, fopt);
  write_to(a.out, out, [&](std::ostream& o) { write_model_json(o, model); });
  if (a.out != "-") {
    std::size_t selected = 0;
    for (double w : model.selection.omega) selected += w >= a.model.select_threshold;
    out << "selected " << selected << " of " << model.p() << " variables in "
        << model.selection.iterations << " sweeps"
        << (model.selection.converged ? "" : " (not converged)") << '\n';
  }
  return kExitOk;
}

// Reorders the columns of `data` to the variable order of `model`.
Dataset align_columns(const Dataset& data, const FittedModel& model) {
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < data.p(); ++j) index.emplace(data.name(j), j);
  std::vector<std::size_t> cols;
  cols.reserve(model.p());
  for (const auto& v : model.variables) {
    const auto it = index.find(v.name);
    if (it == index.end()) throw InputError("data has no column named '" + v.name + "'");
    cols.push_back(it->second);
  }
  return data.select_columns(cols);
}

int cmd_predict(const Args& a, std::ostream& out) {
  const FittedModel model = load_model(a.model_path);
  const Dataset data = align_columns(load(a.input, a.data, false), model);
  const ClassProbabilities psi = update_psi(model, data, a.threads);
  const std::vector<int> predicted = classify(psi, a.model.threshold);
  write_to(a.out, out, [&](std::ostream& o) {
    o << "row,psi,predicted";
    if (data.has_labels()) o << ",label";
    o << '\n';
    for (std::size_t i = 0; i < data.n(); ++i) {
      o << i << ',' << format_real(psi.psi[i]) << ',' << predicted[i];
      if (data.has_labels()) o << ',' << data.label(i);
      o << '\n';
    }
  });
  if (data.has_labels()) {
    out << "classification_error = " << format_real(classification_error(predicted, data.labels()))
        << '\n';
  }
  return kExitOk;
}

int cmd_cv(const Args& a, std::ostream& out) {
  const Dataset data = load(a.input, a.data, true);
  const CrossValidationResult cv =
      cross_validate(data, a.k, a.seed, pipeline_options(a), a.paper_protocol);
  const fs::path dir = output_dir(a.out_dir);
  write_file(dir / "folds.csv", [&](std::ostream& o) { write_folds_csv(o, cv, a.timing); });
  write_file(dir / "selection_rates.csv",
             [&](std::ostream& o) { write_selection_rates_csv(o, cv.names, cv.selection_rate); });
  write_file(dir / "cv_summary.json",
             [&](std::ostream& o) { write_cv_summary_json(o, cv, a.k, a.seed); });
  out << "mean_cv_error = " << format_real(cv.mean_error) << '\n';
  return kExitOk;
}

int cmd_study(const Args& a, std::ostream& out) {
  StudyOptions opt;
  opt.simulation = simulation_spec(a.sim, a.seed);
  opt.reps = a.reps;
  opt.pipeline = pipeline_options(a);
  const StudyResult result = run_simulation_study(opt);
  const fs::path dir = output_dir(a.out_dir);
  write_file(dir / "runs.csv", [&](std::ostream& o) { write_runs_csv(o, result.runs, a.timing); });
  std::vector<std::string> names(opt.simulation.p);
  for (std::size_t j = 0; j < names.size(); ++j) names[j] = "V" + std::to_string(j + 1);
  if (result.selection_rate.empty()) names.clear();
  write_file(dir / "selection_rates.csv",
             [&](std::ostream& o) { write_selection_rates_csv(o, names, result.selection_rate); });
  write_file(dir / "study_summary.json",
             [&](std::ostream& o) { write_study_summary_json(o, opt, result); });
  for (const auto& s : summarize(result.runs)) {
    out << s.method << ": mean_error = " << format_real(s.mean_error)
        << "  mean_selection_accuracy = " << format_real(s.mean_accuracy) << '\n';
  }
  return kExitOk;
}

// Reads a CSV for `bf`; when the label column is absent the last column is used.
Dataset load_for_bf(const Args& a) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + a.input);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  DataArgs d = a.data;
  if (!d.variables_in_rows) {
    std::istringstream header_stream(text);
    const auto rows = parse_csv(header_stream);
    if (rows.empty() || rows.front().size() < 2) {
      throw InputError("bf input needs a header with at least one variable and a label column");
    }
    const auto& header = rows.front();
    if (std::find(header.begin(), header.end(), d.label_column) == header.end()) {
      d.label_column = header.back();
    }
  }
  std::istringstream data_stream(text);
  Dataset data = read_csv(data_stream, load_options(d, true));
  if (d.median_floor || d.variance_floor) {
    data = preprocess(data, PreprocessOptions{d.median_floor, d.variance_floor});
  }
  return data;
}

int cmd_bf(const Args& a, std::ostream& out) {
  if (!(a.bf_c > 0.0)) throw InputError("--c must be positive");
  const Dataset data = load_for_bf(a);
  const PreparedTraining prepared(
      data, a.model.depth > 0 ? std::optional<int>(a.model.depth) : std::nullopt, a.threads);
  std::vector<double> log_bf(data.p());
  parallel_for(data.p(), a.threads,
               [&](std::size_t j) { log_bf[j] = prepared.variable(j).terms.log_bayes_factor(a.bf_c); });
  write_to(a.out, out, [&](std::ostream& o) {
    o << "variable,log_bf\n";
    for (std::size_t j = 0; j < data.p(); ++j) {
      o << data.name(j) << ',' << format_real(log_bf[j]) << '\n';
    }
  });
  return kExitOk;
}

int cmd_density(const Args& a, std::ostream& out) {
  const FittedModel model = load_model(a.model_path);
  std::size_t index = model.p();
  for (std::size_t j = 0; j < model.p(); ++j) {
    if (model.variables[j].name == a.variable) index = j;
  }
  if (index == model.p()) throw InputError("model has no variable named '" + a.variable + "'");
  const auto& centring = model.variables[index].tree.centring;
  const double lower = a.lower.value_or(centring.mean - 4.0 * centring.sd);
  const double upper = a.upper.value_or(centring.mean + 4.0 * centring.sd);
  const auto rows = density_grid(model, index, lower, upper, a.points);
  write_to(a.out, out, [&](std::ostream& o) { write_density_csv(o, rows); });
  return kExitOk;
}

int cmd_bench(const Args& a, std::ostream& out) {
  const auto points = scaling_probe(a.bench_n, a.bench_p, a.seed, pipeline_options(a), a.repeats);
  write_to(a.out, out, [&](std::ostream& o) {
    o << "n,p,seconds\n";
    for (const auto& pt : points) {
      o << pt.n << ',' << pt.p << ',' << format_real(pt.seconds) << '\n';
    }
  });
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Variational nonparametric discriminant analysis"};
  app.name("vnpda");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.footer("Exit status: 0 success, 1 input or configuration error, 2 internal error.");
  app.set_config("--config", "", "Read options from a TOML/INI file")
      ->envname("VNPDA_CONFIG")
      ->default_str("none");
  app.add_option("--threads", a.threads,
                 "Worker threads, default all cores (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Generate a simulated train/test pair and truth");
  add_sim_options(*simulate, a.sim);
  simulate->add_option("--seed", a.seed, "Random seed");
  simulate->add_option("--out-dir", a.out_dir, "Directory for train.csv, test.csv, truth.csv");

  auto* select = app.add_subcommand("select-c", "Choose per-variable smoothing parameters");
  select->add_option("--train", a.input, "Training CSV")->required();
  select->add_option("--out", a.out, "Report JSON path ('-' for stdout)");
  select->add_option("--csv", a.out_csv, "Per-variable CSV report path")->default_str("none");
  add_data_options(*select, a.data);
  add_model_options(*select, a.model, true);

  auto* fit_cmd = app.add_subcommand("fit", "Fit the classifier and write a model JSON");
  fit_cmd->add_option("--train", a.input, "Training CSV")->required();
  fit_cmd->add_option("--out", a.out, "Model JSON path ('-' for stdout)");
  auto* report_opt =
      fit_cmd->add_option("--report", a.report_path, "Use the smoothing from a select-c report")
          ->default_str("none");
  fit_cmd->add_option("--c", a.constant_c,
                      "Use one smoothing value for every variable (none: run select-c)")
      ->check(kSmoothingRange)
      ->default_str("none")
      ->excludes(report_opt);
  add_data_options(*fit_cmd, a.data);
  add_model_options(*fit_cmd, a.model, true);

  auto* predict = app.add_subcommand("predict", "Class probabilities for new samples");
  predict->add_option("--model", a.model_path, "Model JSON from fit")->required();
  predict->add_option("--data", a.input, "CSV of samples (label column optional)")->required();
  predict->add_option("--out", a.out, "Prediction CSV path ('-' for stdout)");
  add_data_options(*predict, a.data);
  predict->add_option("--threshold", a.model.threshold, "Classify as group 1 when psi >= threshold")
      ->check(kOpenUnit);

  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  cv->add_option("--data", a.input, "Labelled CSV")->required();
  cv->add_option("--k", a.k, "Number of folds")->check(CLI::Range(2, 1000000));
  cv->add_option("--seed", a.seed, "Fold assignment seed");
  cv->add_option("--out-dir", a.out_dir, "Directory for folds.csv, selection_rates.csv, cv_summary.json");
  cv->add_flag("--paper-protocol", a.paper_protocol,
               "Standardize the whole dataset once before splitting");
  cv->add_flag("--timing", a.timing, "Add wall-clock seconds to folds.csv");
  add_data_options(*cv, a.data);
  add_model_options(*cv, a.model, true);

  auto* study = app.add_subcommand("study", "Repeated simulation study against a Gaussian baseline");
  add_sim_options(*study, a.sim);
  study->add_option("--reps", a.reps, "Number of repetitions")->check(CLI::NonNegativeNumber);
  study->add_option("--seed", a.seed, "Seed of the first repetition");
  study->add_option("--out-dir", a.out_dir,
                    "Directory for runs.csv, selection_rates.csv, study_summary.json");
  study->add_flag("--timing", a.timing, "Add wall-clock seconds to runs.csv");
  add_model_options(*study, a.model, true);

  auto* bf = app.add_subcommand("bf", "Per-variable log Bayes factor of the two-sample test");
  bf->add_option("--data", a.input, "CSV with variables and a group column")->required();
  bf->add_option("--c", a.bf_c, "Smoothing parameter")->check(CLI::PositiveNumber);
  bf->add_option("--depth", a.model.depth, "Tree depth (0 selects floor(log2 n))")
      ->check(CLI::Range(0, kMaxDepth));
  bf->add_option("--out", a.out, "Output CSV path ('-' for stdout)");
  add_data_options(*bf, a.data);

  auto* density = app.add_subcommand("density", "Predictive densities of one variable on a grid");
  density->add_option("--model", a.model_path, "Model JSON from fit")->required();
  density->add_option("--variable", a.variable, "Variable name")->required();
  density->add_option("--lower", a.lower, "Grid start")->default_str("centring mean - 4 sd");
  density->add_option("--upper", a.upper, "Grid end")->default_str("centring mean + 4 sd");
  density->add_option("--points", a.points, "Number of grid points")->check(CLI::Range(2, 10000000));
  density->add_option("--out", a.out, "Output CSV path ('-' for stdout)");

  auto* bench = app.add_subcommand("bench", "Time smoothing selection plus fit against p");
  bench->add_option("--n", a.bench_n, "Training sample size");
  bench->add_option("--p", a.bench_p, "Variable counts to time")->delimiter(',');
  bench->add_option("--repeats", a.repeats, "Timed repeats per size (fastest is kept)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", a.seed, "Random seed");
  bench->add_option("--out", a.out, "Output CSV path ('-' for stdout)");
  add_model_options(*bench, a.model, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << " (run 'vnpda --help' for usage)\n";
    return kExitInput;
  }

  try {
    if (*simulate) return cmd_simulate(a, out);
    if (*select) return cmd_select_c(a, out);
    if (*fit_cmd) return cmd_fit(a, out);
    if (*predict) return cmd_predict(a, out);
    if (*cv) return cmd_cv(a, out);
    if (*study) return cmd_study(a, out);
    if (*bf) return cmd_bf(a, out);
    if (*density) return cmd_density(a, out);
    if (*bench) return cmd_bench(a, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << "internal error: no subcommand dispatched\n";
  return kExitInternal;
}

}  // namespace vnpda::cli
