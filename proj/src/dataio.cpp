#include "vnpda/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "vnpda/errors.hpp"
#include "vnpda/rng.hpp"

namespace vnpda {

Dataset::Dataset(std::vector<std::string> names, std::vector<std::vector<double>> columns,
                 std::vector<int> labels)
    : names_(std::move(names)), columns_(std::move(columns)), labels_(std::move(labels)) {
  if (names_.size() != columns_.size()) {
    throw InputError("dataset: " + std::to_string(names_.size()) + " names for " +
                     std::to_string(columns_.size()) + " columns");
  }
  n_ = columns_.empty() ? labels_.size() : columns_.front().size();
  for (const auto& col : columns_) {
    if (col.size() != n_) throw InputError("dataset: columns differ in length");
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw InputError("dataset: label count differs from the number of rows");
  }
  for (int y : labels_) {
    if (y != 0 && y != 1) throw InputError("dataset: labels must be 0 or 1");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) throw InputError("duplicate variable name '" + name + "'");
  }
}

std::size_t Dataset::group_size(int k) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), k));
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    cols[j].reserve(rows.size());
    for (std::size_t i : rows) cols[j].push_back(columns_[j].at(i));
  }
  std::vector<int> labels;
  if (!labels_.empty()) {
    labels.reserve(rows.size());
    for (std::size_t i : rows) labels.push_back(labels_.at(i));
  }
  Dataset out(names_, std::move(cols), std::move(labels));
  out.label_names = label_names;
  out.standardization = standardization;
  return out;
}

Dataset Dataset::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::optional<std::vector<Standardization>> params;
  if (standardization) params.emplace();
  for (std::size_t j : cols) {
    names.push_back(names_.at(j));
    columns.push_back(columns_.at(j));
    if (params) params->push_back(standardization->at(j));
  }
  Dataset out(std::move(names), std::move(columns), labels_);
  if (columns_.empty() || cols.empty()) out.n_ = n_;
  out.label_names = label_names;
  out.standardization = std::move(params);
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char ch = 0;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // Skip blank lines.
    if (!(record.size() == 1 && record.front().empty())) records.push_back(std::move(record));
    record.clear();
  };
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started && !field.empty()) throw InputError("CSV: stray quote inside a field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (in.peek() == '\n') in.get(ch);
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) throw InputError("CSV: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  // A UTF-8 byte order mark on the first field is not part of the name.
  if (!records.empty() && !records.front().empty()) {
    std::string& first = records.front().front();
    if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
  }
  return records;
}

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

std::optional<double> parse_real(std::string_view text) {
  std::string s = trim(text);
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  if (v.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

struct LabelCoding {
  std::vector<int> labels;
  std::array<std::string, 2> names{"0", "1"};
};

LabelCoding code_labels(const std::vector<std::string>& raw, const LoadOptions& options) {
  std::set<std::string> distinct(raw.begin(), raw.end());
  if (distinct.count("")) throw InputError("label column has missing values");
  if (distinct.size() > 2) {
    std::string shown;
    for (const auto& v : distinct) shown += (shown.empty() ? "" : ", ") + v;
    throw InputError("labels must take at most two values, found " +
                     std::to_string(distinct.size()) + ": " + shown);
  }
  std::string positive;
  const bool zero_one = std::all_of(distinct.begin(), distinct.end(),
                                    [](const std::string& v) { return v == "0" || v == "1"; });
  const bool numeric = std::all_of(distinct.begin(), distinct.end(),
                                   [](const std::string& v) { return parse_real(v).has_value(); });
  if (options.positive_label) {
    positive = *options.positive_label;
    if (!distinct.count(positive) && distinct.size() == 2) {
      throw InputError("positive label '" + positive + "' does not occur in the label column");
    }
  } else if (zero_one) {
    positive = "1";
  } else if (numeric) {
    positive = *std::max_element(distinct.begin(), distinct.end(),
                                 [](const std::string& x, const std::string& y) {
                                   return *parse_real(x) < *parse_real(y);
                                 });
  } else {
    positive = *distinct.rbegin();
  }
  LabelCoding coding;
  coding.names[1] = positive;
  coding.names[0] = "0";
  for (const auto& v : distinct) {
    if (v != positive) coding.names[0] = v;
  }
  coding.labels.reserve(raw.size());
  for (const auto& v : raw) coding.labels.push_back(v == positive ? 1 : 0);
  return coding;
}

[[noreturn]] void report_bad_cells(const std::vector<std::string>& problems, std::size_t total) {
  std::string msg = "non-numeric or missing cells (" + std::to_string(total) + " rejected): ";
  for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
  if (total > problems.size()) msg += "; ...";
  throw InputError(msg);
}

}  // namespace

Dataset read_csv(std::istream& in, const LoadOptions& options) {
  const auto records = parse_csv(in);
  if (records.empty()) throw InputError("CSV: file is empty");
  const auto& header = records.front();
  constexpr std::size_t kMaxReported = 5;

  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> raw_labels;
  std::vector<std::string> problems;
  std::size_t bad = 0;

  if (options.orientation == Orientation::SamplesInRows) {
    std::optional<std::size_t> label_at;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (trim(header[c]) == options.label_column) label_at = c;
    }
    if (!label_at && options.labels_required) {
      throw InputError("CSV: label column '" + options.label_column + "' not found in header");
    }
    std::vector<std::size_t> value_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (label_at && c == *label_at) continue;
      value_cols.push_back(c);
      names.push_back(trim(header[c]));
    }
    columns.resize(value_cols.size());
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      if (rec.size() != header.size()) {
        throw InputError("CSV: row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                         " fields, header has " + std::to_string(header.size()));
      }
      bool row_ok = true;
      for (std::size_t k = 0; k < value_cols.size(); ++k) {
        const auto v = parse_real(rec[value_cols[k]]);
        if (!v) {
          if (row_ok) {
            ++bad;
            if (problems.size() < kMaxReported) {
              problems.push_back("row " + std::to_string(r) + " column '" + names[k] + "' = '" +
                                 rec[value_cols[k]] + "'");
            }
          }
          row_ok = false;
          continue;
        }
        columns[k].push_back(*v);
      }
      if (label_at) raw_labels.push_back(trim(rec[*label_at]));
    }
  } else {
    const std::size_t n = header.size() - 1;
    if (header.empty() || n == 0) throw InputError("CSV: no sample columns in header");
    bool found_labels = false;
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      if (rec.size() != header.size()) {
        throw InputError("CSV: row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                         " fields, header has " + std::to_string(header.size()));
      }
      const std::string name = trim(rec[0]);
      if (name == options.label_column) {
        for (std::size_t c = 1; c < rec.size(); ++c) raw_labels.push_back(trim(rec[c]));
        found_labels = true;
        continue;
      }
      std::vector<double> col;
      col.reserve(n);
      bool row_ok = true;
      for (std::size_t c = 1; c < rec.size(); ++c) {
        const auto v = parse_real(rec[c]);
        if (!v) {
          if (row_ok) {
            ++bad;
            if (problems.size() < kMaxReported) {
              problems.push_back("row " + std::to_string(r) + " ('" + name + "') sample '" +
                                 trim(header[c]) + "' = '" + rec[c] + "'");
            }
          }
          row_ok = false;
          continue;
        }
        col.push_back(*v);
      }
      names.push_back(name);
      columns.push_back(std::move(col));
    }
    if (!found_labels && options.labels_required) {
      throw InputError("CSV: label row '" + options.label_column + "' not found");
    }
  }
  if (bad > 0) report_bad_cells(problems, bad);
  if (columns.empty()) throw InputError("CSV: no variable columns");

  std::vector<int> labels;
  std::array<std::string, 2> label_names{"0", "1"};
  if (!raw_labels.empty()) {
    auto coding = code_labels(raw_labels, options);
    labels = std::move(coding.labels);
    label_names = coding.names;
  }
  Dataset data(std::move(names), std::move(columns), std::move(labels));
  data.label_names = label_names;
  if (data.n() == 0) throw InputError("CSV: no data rows");
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return read_csv(in, options);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw ContractViolation("format_real: buffer too small");
  return std::string(buf, ptr);
}

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& out, const Dataset& data, const std::string& label_column) {
  std::string line;
  if (data.has_labels()) line = quote_if_needed(label_column);
  for (std::size_t j = 0; j < data.p(); ++j) {
    if (!line.empty() || j > 0) line += ',';
    line += quote_if_needed(data.name(j));
  }
  out << line << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    line.clear();
    if (data.has_labels()) line = std::to_string(data.label(i));
    for (std::size_t j = 0; j < data.p(); ++j) {
      if (!line.empty() || j > 0) line += ',';
      line += format_real(data.value(i, j));
    }
    out << line << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const Dataset& data,
              const std::string& label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_csv(out, data, label_column);
  if (!out) throw InputError("error writing '" + path.string() + "'");
}

namespace {

double median_of(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    const double lower =
        *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    m = 0.5 * (m + lower);
  }
  return m;
}

Standardization moments(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd};
}

}  // namespace

std::vector<Standardization> fit_standardization(const Dataset& data) {
  std::vector<Standardization> params;
  params.reserve(data.p());
  for (std::size_t j = 0; j < data.p(); ++j) {
    Standardization s = moments(data.column(j));
    if (!(s.sd > 0.0)) s.sd = 1.0;
    params.push_back(s);
  }
  return params;
}

Dataset apply_standardization(const Dataset& data, std::span<const Standardization> params) {
  if (params.size() != data.p()) {
    throw InputError("standardization parameters do not match the number of variables");
  }
  std::vector<std::vector<double>> cols(data.p());
  for (std::size_t j = 0; j < data.p(); ++j) {
    const auto col = data.column(j);
    cols[j].resize(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      cols[j][i] = (col[i] - params[j].mean) / params[j].sd;
    }
  }
  std::vector<int> labels(data.labels().begin(), data.labels().end());
  Dataset out(data.names(), std::move(cols), std::move(labels));
  out.label_names = data.label_names;
  out.standardization = std::vector<Standardization>(params.begin(), params.end());
  return out;
}

Dataset preprocess(const Dataset& data, const PreprocessOptions& options) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < data.p(); ++j) {
    const auto col = data.column(j);
    if (options.median_floor && median_of(col) <= *options.median_floor) continue;
    if (options.variance_floor) {
      const Standardization m = moments(col);
      if (m.sd * m.sd <= *options.variance_floor) continue;
    }
    keep.push_back(j);
  }
  if (keep.empty()) throw InputError("preprocess: every variable was filtered out");
  const Dataset kept = data.select_columns(keep);
  return apply_standardization(kept, fit_standardization(kept));
}

std::vector<Fold> split_folds(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 2) throw InputError("cross-validation needs at least 2 folds");
  if (!data.has_labels()) throw InputError("cross-validation needs labelled data");
  const auto folds_n = static_cast<std::size_t>(k);
  std::array<std::vector<std::size_t>, 2> groups;
  for (std::size_t i = 0; i < data.n(); ++i) {
    groups[static_cast<std::size_t>(data.label(i))].push_back(i);
  }
  for (int g = 1; g >= 0; --g) {
    if (groups[static_cast<std::size_t>(g)].size() < folds_n) {
      throw InputError("group " + std::to_string(g) + " has " +
                       std::to_string(groups[static_cast<std::size_t>(g)].size()) +
                       " members, fewer than the " + std::to_string(k) + " folds requested");
    }
  }
  Rng rng(seed, 0xF01D5ULL);
  std::vector<std::vector<std::size_t>> test(folds_n);
  std::size_t next = 0;
  for (auto& members : groups) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t i : members) {
      test[next].push_back(i);
      next = (next + 1) % folds_n;
    }
  }
  std::vector<Fold> folds(folds_n);
  for (std::size_t f = 0; f < folds_n; ++f) {
    std::sort(test[f].begin(), test[f].end());
    folds[f].test = test[f];
    std::vector<bool> in_test(data.n(), false);
    for (std::size_t i : test[f]) in_test[i] = true;
    for (std::size_t i = 0; i < data.n(); ++i) {
      if (!in_test[i]) folds[f].train.push_back(i);
    }
  }
  return folds;
}

}  // namespace vnpda
