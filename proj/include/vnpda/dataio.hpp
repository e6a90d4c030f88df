#ifndef VNPDA_DATAIO_HPP
#define VNPDA_DATAIO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnpda/dataset.hpp"

namespace vnpda {

enum class Orientation { SamplesInRows, VariablesInRows };

struct LoadOptions {
  std::string label_column = "label";
  Orientation orientation = Orientation::SamplesInRows;
  // Raw label value mapped to group 1. Without it, "0"/"1" map literally,
  // other numeric labels map the larger value to 1, and text labels map the
  // lexicographically larger value to 1.
  std::optional<std::string> positive_label;
  bool labels_required = true;
};

/// Splits CSV text into records of fields (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

Dataset read_csv(std::istream& in, const LoadOptions& options = {});
Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options = {});

/// Samples in rows, label first (when present), reals at full precision.
void write_csv(std::ostream& out, const Dataset& data, const std::string& label_column = "label");
void save_csv(const std::filesystem::path& path, const Dataset& data,
              const std::string& label_column = "label");

/// Formats a real so that parsing it back gives the same double.
std::string format_real(double value);

struct PreprocessOptions {
  std::optional<double> median_floor;    // drop variables with median <= floor
  std::optional<double> variance_floor;  // drop variables with variance <= floor
};

/// Filters variables (median, then variance) and standardizes the survivors
/// by their pooled sample mean and standard deviation.
Dataset preprocess(const Dataset& data, const PreprocessOptions& options = {});

/// Pooled column means and (n−1) standard deviations. Constant columns get sd 1.
std::vector<Standardization> fit_standardization(const Dataset& data);

/// Applies (x − mean)/sd column-wise with the given parameters.
Dataset apply_standardization(const Dataset& data, std::span<const Standardization> params);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified k-fold split. Within each group indices are shuffled under the
/// seed and dealt round-robin, so every fold gets ⌊n_k/k⌋ or ⌈n_k/k⌉ members
/// of group k.
std::vector<Fold> split_folds(const Dataset& data, int k, std::uint64_t seed);

}  // namespace vnpda

#endif  // VNPDA_DATAIO_HPP
