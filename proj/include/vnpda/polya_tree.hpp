#ifndef VNPDA_POLYA_TREE_HPP
#define VNPDA_POLYA_TREE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vnpda {

// Deepest layer a tree may be truncated at. Layer indices are packed in a
// 64-bit word, and G(x) only carries 53 bits anyway.
inline constexpr int kMaxDepth = 48;

// Floor applied to the centring standard deviation of a constant column.
inline constexpr double kMinCentringSd = 1e-8;

struct CentringGaussian {
  double mean = 0.0;
  double sd = 1.0;

  friend bool operator==(const CentringGaussian&, const CentringGaussian&) = default;
};

struct CentringFit {
  CentringGaussian centring;
  // True when the column had zero spread and sd was floored.
  bool degenerate = false;
};

/// Gaussian parameterised by the sample mean and (n−1) standard deviation.
CentringFit fit_centring(std::span<const double> column);

/// Binary path from the root: digit h (1-based) is 0 when the path branches
/// left at layer h. The empty code is the root.
class PathCode {
 public:
  PathCode() = default;
  PathCode(std::uint64_t index_in_layer, int length);

  static PathCode from_string(std::string_view digits);

  int length() const { return length_; }
  // k = Σ_h ε_h 2^{ℓ−h}: position of the cell within its layer.
  std::uint64_t index() const { return index_; }
  int digit(int layer) const;
  PathCode prefix(int length) const;
  PathCode child(int digit) const;
  std::string to_string() const;

  friend bool operator==(const PathCode&, const PathCode&) = default;
  friend auto operator<=>(const PathCode& a, const PathCode& b) {
    if (auto cmp = a.length_ <=> b.length_; cmp != 0) return cmp;
    return a.index_ <=> b.index_;
  }

 private:
  std::uint64_t index_ = 0;
  int length_ = 0;
};

struct PolyaTreeSpec {
  CentringGaussian centring;
  double c = 1.0;  // smoothing parameter
  int depth = 1;   // truncation layer D
};

/// ⌊log₂ n⌋, at least 1 and at most kMaxDepth.
int default_depth(std::size_t n);

/// Throws InputError when the spec is unusable (c ≤ 0, sd ≤ 0, bad depth).
void validate(const PolyaTreeSpec& spec);

/// α shared by both children of a parent of the given length:
/// 1 at the root, c·l² below it.
double child_alpha(int parent_length, double c);

/// α attached to the subset named by `code` (length ≥ 1).
double alpha(const PathCode& code, double c);

struct Interval {
  double lower;  // exclusive
  double upper;  // inclusive
};

/// (G⁻¹(k/2^ℓ), G⁻¹((k+1)/2^ℓ)], with ∓∞ at the ends of the layer.
Interval cell_boundaries(const PathCode& code, const CentringGaussian& centring);

/// Depth-D path of x, read off the binary expansion of G(x).
PathCode path_of(double x, const CentringGaussian& centring, int depth);
PathCode path_of(double x, const PolyaTreeSpec& spec);

struct NodeCounts {
  std::uint32_t group1 = 0;
  std::uint32_t group0 = 0;

  std::uint32_t total() const { return group1 + group0; }
  std::uint32_t group(int k) const { return k == 1 ? group1 : group0; }
  friend bool operator==(const NodeCounts&, const NodeCounts&) = default;
};

/// Per-group observation counts for every occupied node of a depth-D tree.
/// Empty nodes are not stored; lookups of them return zero counts.
class CellCounts {
 public:
  using Layer = std::vector<std::pair<std::uint64_t, NodeCounts>>;

  CellCounts() = default;
  explicit CellCounts(int depth);

  /// Builds counts from per-point depth-D paths.
  static CellCounts from_leaves(std::span<const PathCode> leaves,
                                std::span<const int> labels, int depth);

  /// Rebuilds counts from an explicit node list (e.g. a deserialized model).
  /// Throws InputError if parent-child conservation fails.
  static CellCounts from_nodes(int depth,
                               std::span<const std::pair<PathCode, NodeCounts>> nodes);

  int depth() const { return depth_; }
  NodeCounts at(const PathCode& code) const;
  NodeCounts root() const;
  /// Occupied nodes of layer l, sorted by index within the layer.
  const Layer& layer(int l) const { return layers_.at(static_cast<std::size_t>(l)); }
  std::size_t occupied_nodes() const;

  /// Every occupied node, ordered by (length, index).
  std::vector<std::pair<PathCode, NodeCounts>> nodes() const;

  /// Parent count equals the sum of child counts for both groups.
  bool is_consistent() const;

 private:
  int depth_ = 0;
  std::vector<Layer> layers_;
};

/// Counts group-1 and group-0 observations in every tree node.
/// Labels must be 0 or 1; the column must be non-empty and finite.
CellCounts accumulate_counts(std::span<const double> column, std::span<const int> labels,
                             const PolyaTreeSpec& spec);

/// Posterior-mean density of group k: the centring density reweighted by
/// 2(α + n_child)/(2α + n_parent) at every layer along x's path.
double predictive_density(double x, const CellCounts& counts, int group,
                          const PolyaTreeSpec& spec);

}  // namespace vnpda

#endif  // VNPDA_POLYA_TREE_HPP
