#ifndef VNPDA_SMOOTHING_HPP
#define VNPDA_SMOOTHING_HPP

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vnpda/cvb.hpp"
#include "vnpda/dataset.hpp"

namespace vnpda {

// Smoothing parameters (a₁, a₂, a₃, a₄) assigned to the four bins.
using Ladder = std::array<double, 4>;

inline constexpr double kMaxSmoothing = 100.0;

/// Prior expectation of the p-value of whichever hypothesis holds:
/// (v1 + p^u v0) / (1 + p^u).
double expected_pvalue(double v0, double v1, std::size_t p, double u);

/// Quartile bins 1..4 from the ⌊p/4⌋, ⌊p/2⌋, ⌊3p/4⌋ order statistics
/// (1-based) of E. Fewer than four variables all land in bin 4.
std::vector<int> assign_bins(std::span<const double> expected);

/// Every non-decreasing 4-tuple drawn from `values`, in lexicographic order.
std::vector<Ladder> monotone_grid(std::span<const double> values);

/// monotone_grid over {1, 5, 10, 50, 100}.
std::vector<Ladder> default_grid();

struct GridEvaluation {
  Ladder ladder{};
  double error = 0.0;
};

struct SmoothingReport {
  std::vector<std::string> names;
  std::vector<double> v0;        // Shapiro–Wilk p-value of the pooled column
  std::vector<double> v1;        // two-sample KS p-value between the groups
  std::vector<double> expected;  // E_j
  std::vector<int> bins;         // 1..4
  Ladder chosen{};
  double chosen_error = 0.0;     // resubstitution error of `chosen`
  std::vector<GridEvaluation> evaluated;

  /// c_j = chosen[bin_j − 1].
  std::vector<double> smoothing() const;
};

struct SmoothingOptions {
  OmegaOptions omega;
  double threshold = 0.5;
  unsigned threads = 1;
};

// Shapiro–Wilk is evaluated on at most this many points.
inline constexpr std::size_t kShapiroWilkMaxN = 5000;

/// Chooses per-variable smoothing parameters: bins variables by their
/// expected goodness-of-fit p-value, then searches the grid for the ladder
/// with the lowest resubstitution error (ties go to the lexicographically
/// smallest ladder).
SmoothingReport select_c(const PreparedTraining& prepared, const Hyperparameters& hyper,
                         std::span<const Ladder> grid, const SmoothingOptions& options = {});

void write_report_json(std::ostream& out, const SmoothingReport& report);
void write_report_csv(std::ostream& out, const SmoothingReport& report);
/// Reads either format back; only names, bins and c are needed for fitting.
SmoothingReport read_report_json(std::istream& in);

}  // namespace vnpda

#endif  // VNPDA_SMOOTHING_HPP
