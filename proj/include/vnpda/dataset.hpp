#ifndef VNPDA_DATASET_HPP
#define VNPDA_DATASET_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vnpda {

struct Standardization {
  double mean = 0.0;
  double sd = 1.0;
};

// n × p matrix stored by column, binary labels and variable names. Labels may
// be absent for data that is only to be classified.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<std::string> names, std::vector<std::vector<double>> columns,
          std::vector<int> labels);

  std::size_t n() const { return n_; }
  std::size_t p() const { return columns_.size(); }

  std::span<const double> column(std::size_t j) const { return columns_.at(j); }
  double value(std::size_t i, std::size_t j) const { return columns_[j][i]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t j) const { return names_.at(j); }

  bool has_labels() const { return !labels_.empty(); }
  std::span<const int> labels() const { return labels_; }
  int label(std::size_t i) const { return labels_.at(i); }
  std::size_t group_size(int k) const;

  // Raw label spellings mapped to 0 and 1, when known.
  std::array<std::string, 2> label_names{"0", "1"};
  // Per-variable (mean, sd) used to standardize the columns, if applied.
  std::optional<std::vector<Standardization>> standardization;

  Dataset select_rows(std::span<const std::size_t> rows) const;
  Dataset select_columns(std::span<const std::size_t> cols) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::vector<int> labels_;
};

}  // namespace vnpda

#endif  // VNPDA_DATASET_HPP
