#include "vnpda/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "vnpda/dataio.hpp"
#include "vnpda/errors.hpp"
#include "vnpda/parallel.hpp"
#include "vnpda/stats.hpp"

namespace vnpda {

double expected_pvalue(double v0, double v1, std::size_t p, double u) {
  const double weight = std::pow(static_cast<double>(p), u);
  if (std::isinf(weight)) return v0;
  return (v1 + weight * v0) / (1.0 + weight);
}

std::vector<int> assign_bins(std::span<const double> expected) {
  const std::size_t p = expected.size();
  std::vector<int> bins(p, 4);
  if (p < 4) return bins;
  std::vector<double> sorted(expected.begin(), expected.end());
  std::sort(sorted.begin(), sorted.end());
  const double q1 = sorted[p / 4 - 1];
  const double q2 = sorted[p / 2 - 1];
  const double q3 = sorted[3 * p / 4 - 1];
  for (std::size_t j = 0; j < p; ++j) {
    const double e = expected[j];
    if (e < q1) {
      bins[j] = 1;
    } else if (e < q2) {
      bins[j] = 2;
    } else if (e < q3) {
      bins[j] = 3;
    }
  }
  return bins;
}

std::vector<Ladder> monotone_grid(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Ladder> grid;
  const std::size_t m = v.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      for (std::size_t c = b; c < m; ++c)
        for (std::size_t d = c; d < m; ++d) grid.push_back({v[a], v[b], v[c], v[d]});
  return grid;
}

std::vector<Ladder> default_grid() {
  static constexpr std::array<double, 5> kLadder = {1.0, 5.0, 10.0, 50.0, 100.0};
  return monotone_grid(kLadder);
}

std::vector<double> SmoothingReport::smoothing() const {
  std::vector<double> c(bins.size());
  for (std::size_t j = 0; j < bins.size(); ++j) {
    c[j] = chosen.at(static_cast<std::size_t>(bins[j] - 1));
  }
  return c;
}

namespace {

void validate_grid(std::span<const Ladder> grid) {
  if (grid.empty()) throw InputError("smoothing grid is empty");
  for (const Ladder& l : grid) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!(l[i] > 0.0 && l[i] <= kMaxSmoothing)) {
        throw InputError("smoothing grid values must lie in (0, 100]");
      }
      if (i > 0 && l[i] < l[i - 1]) throw InputError("smoothing grid tuples must be non-decreasing");
    }
  }
}

double goodness_of_fit_pvalue(std::span<const double> column) {
  if (column.size() < 3) throw InputError("select-c: need at least 3 observations");
  std::vector<double> sample;
  if (column.size() > kShapiroWilkMaxN) {
    // Evenly spaced order statistics keep the shape of the column.
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    sample.reserve(kShapiroWilkMaxN);
    for (std::size_t i = 0; i < kShapiroWilkMaxN; ++i) {
      sample.push_back(sorted[i * sorted.size() / kShapiroWilkMaxN]);
    }
    column = sample;
  }
  try {
    return stats::shapiro_wilk(column).p_value;
  } catch (const stats::DegenerateSample&) {
    return 0.0;
  }
}

}  // namespace

SmoothingReport select_c(const PreparedTraining& prepared, const Hyperparameters& hyper,
                         std::span<const Ladder> grid, const SmoothingOptions& options) {
  validate(hyper);
  validate_grid(grid);
  const Dataset& data = prepared.data();
  const std::size_t p = data.p();
  const std::size_t n = data.n();

  SmoothingReport report;
  report.names = data.names();
  report.v0.resize(p);
  report.v1.resize(p);
  report.expected.resize(p);
  parallel_for(p, options.threads, [&](std::size_t j) {
    const auto column = data.column(j);
    std::vector<double> g1;
    std::vector<double> g0;
    for (std::size_t i = 0; i < n; ++i) (data.label(i) == 1 ? g1 : g0).push_back(column[i]);
    report.v0[j] = goodness_of_fit_pvalue(column);
    report.v1[j] = stats::ks_two_sample(g1, g0).p_value;
    report.expected[j] = expected_pvalue(report.v0[j], report.v1[j], p, hyper.u);
  });
  report.bins = assign_bins(report.expected);

  // Bayes factors and training-point log ratios for every distinct value in
  // the grid. Counts do not depend on c, so only the α values change.
  std::vector<double> values;
  for (const Ladder& l : grid) values.insert(values.end(), l.begin(), l.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const std::size_t nv = values.size();

  std::vector<double> log_bf(p * nv);
  std::vector<double> ratio(p * nv * n);  // [(j * nv + v) * n + i]
  parallel_for(p, options.threads, [&](std::size_t j) {
    const VariableSummary& summary = prepared.variable(j);
    for (std::size_t v = 0; v < nv; ++v) {
      log_bf[j * nv + v] = summary.terms.log_bayes_factor(values[v]);
      double* out = &ratio[(j * nv + v) * n];
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = log_probability_ratio(summary.leaves[i], summary.counts, values[v]);
      }
    }
  });
  auto value_index = [&](double c) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), c) -
                                    values.begin());
  };

  const double prior = std::log((hyper.a_y + static_cast<double>(prepared.n1())) /
                                (hyper.b_y + static_cast<double>(prepared.n0())));
  report.evaluated.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t g) {
    const Ladder& ladder = grid[g];
    std::vector<std::size_t> which(p);
    std::vector<double> bf(p);
    for (std::size_t j = 0; j < p; ++j) {
      which[j] = value_index(ladder[static_cast<std::size_t>(report.bins[j] - 1)]);
      bf[j] = log_bf[j * nv + which[j]];
    }
    const SelectionState state = update_omega(bf, hyper, options.omega);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double eta = prior;
      for (std::size_t j = 0; j < p; ++j) {
        eta += state.omega[j] * ratio[(j * nv + which[j]) * n + i];
      }
      const double psi = open_expit(eta);
      const int predicted = psi >= options.threshold ? 1 : 0;
      wrong += predicted != data.label(i) ? 1 : 0;
    }
    report.evaluated[g] = GridEvaluation{ladder, static_cast<double>(wrong) / static_cast<double>(n)};
  });

  const GridEvaluation* best = &report.evaluated.front();
  for (const GridEvaluation& e : report.evaluated) {
    if (e.error < best->error || (e.error == best->error && e.ladder < best->ladder)) best = &e;
  }
  report.chosen = best->ladder;
  report.chosen_error = best->error;
  return report;
}

void write_report_json(std::ostream& out, const SmoothingReport& report) {
  nlohmann::ordered_json doc;
  doc["format"] = "vnpda-smoothing-report";
  doc["version"] = 1;
  doc["chosen"] = report.chosen;
  doc["resubstitution_error"] = report.chosen_error;
  const auto c = report.smoothing();
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < report.bins.size(); ++j) {
    vars.push_back({{"name", report.names.at(j)},
                    {"v0", report.v0.at(j)},
                    {"v1", report.v1.at(j)},
                    {"expected", report.expected.at(j)},
                    {"bin", report.bins[j]},
                    {"c", c[j]}});
  }
  doc["variables"] = std::move(vars);
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const auto& e : report.evaluated) grid.push_back({{"ladder", e.ladder}, {"error", e.error}});
  doc["grid"] = std::move(grid);
  out << doc.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const SmoothingReport& report) {
  out << "variable,v0,v1,expected,bin,c\n";
  const auto c = report.smoothing();
  for (std::size_t j = 0; j < report.bins.size(); ++j) {
    out << report.names.at(j) << ',' << format_real(report.v0.at(j)) << ','
        << format_real(report.v1.at(j)) << ',' << format_real(report.expected.at(j)) << ','
        << report.bins[j] << ',' << format_real(c[j]) << '\n';
  }
}

SmoothingReport read_report_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("smoothing report: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "vnpda-smoothing-report") {
      throw InputError("not a smoothing report");
    }
    SmoothingReport report;
    report.chosen = doc.at("chosen").get<Ladder>();
    report.chosen_error = doc.at("resubstitution_error").get<double>();
    for (const auto& v : doc.at("variables")) {
      report.names.push_back(v.at("name").get<std::string>());
      report.v0.push_back(v.at("v0").get<double>());
      report.v1.push_back(v.at("v1").get<double>());
      report.expected.push_back(v.at("expected").get<double>());
      const int bin = v.at("bin").get<int>();
      if (bin < 1 || bin > 4) throw InputError("smoothing report: bin out of range");
      report.bins.push_back(bin);
    }
    for (const auto& e : doc.value("grid", nlohmann::json::array())) {
      report.evaluated.push_back({e.at("ladder").get<Ladder>(), e.at("error").get<double>()});
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("smoothing report: ") + e.what());
  }
}

}  // namespace vnpda
