#include "vnpda/polya_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vnpda/errors.hpp"
#include "vnpda/stats.hpp"

namespace vnpda {

CentringFit fit_centring(std::span<const double> column) {
  if (column.empty()) throw InputError("fit_centring: empty column");
  const double n = static_cast<double>(column.size());
  const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  double sd = column.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (!std::isfinite(mean) || !std::isfinite(sd)) {
    throw InputError("fit_centring: column moments are not finite");
  }
  CentringFit fit;
  fit.degenerate = !(sd > kMinCentringSd);
  sd = std::max(sd, kMinCentringSd);
  fit.centring = CentringGaussian{mean, sd};
  return fit;
}

PathCode::PathCode(std::uint64_t index_in_layer, int length)
    : index_(index_in_layer), length_(length) {
  if (length < 0 || length > kMaxDepth) {
    throw ContractViolation("PathCode: length out of range");
  }
  if (length < 64 && (index_in_layer >> length) != 0) {
    throw ContractViolation("PathCode: index does not fit in the layer");
  }
}

PathCode PathCode::from_string(std::string_view digits) {
  if (digits.size() > static_cast<std::size_t>(kMaxDepth)) {
    throw InputError("path code longer than the maximum depth");
  }
  std::uint64_t index = 0;
  for (char ch : digits) {
    if (ch != '0' && ch != '1') {
      throw InputError("path code must contain only 0/1 digits: '" +
                       std::string(digits) + "'");
    }
    index = (index << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return PathCode(index, static_cast<int>(digits.size()));
}

int PathCode::digit(int layer) const {
  if (layer < 1 || layer > length_) throw ContractViolation("PathCode::digit: bad layer");
  return static_cast<int>((index_ >> (length_ - layer)) & 1U);
}

PathCode PathCode::prefix(int length) const {
  if (length < 0 || length > length_) throw ContractViolation("PathCode::prefix: bad length");
  return PathCode(index_ >> (length_ - length), length);
}

PathCode PathCode::child(int digit) const {
  return PathCode((index_ << 1) | static_cast<std::uint64_t>(digit & 1), length_ + 1);
}

std::string PathCode::to_string() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int h = 1; h <= length_; ++h) {
    if (digit(h) == 1) out[static_cast<std::size_t>(h - 1)] = '1';
  }
  return out;
}

int default_depth(std::size_t n) {
  if (n < 2) return 1;
  int depth = 0;
  while ((std::size_t{1} << (depth + 1)) <= n && depth + 1 <= kMaxDepth) ++depth;
  return std::max(1, depth);
}

void validate(const PolyaTreeSpec& spec) {
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
    throw InputError("smoothing parameter c must be positive and finite");
  }
  if (spec.depth < 1 || spec.depth > kMaxDepth) {
    throw InputError("tree depth must lie in [1, " + std::to_string(kMaxDepth) + "]");
  }
  if (!(spec.centring.sd > 0.0) || !std::isfinite(spec.centring.sd) ||
      !std::isfinite(spec.centring.mean)) {
    throw InputError("centring distribution needs a finite mean and positive sd");
  }
}

double child_alpha(int parent_length, double c) {
  if (parent_length == 0) return 1.0;
  const double l = static_cast<double>(parent_length);
  return c * l * l;
}

double alpha(const PathCode& code, double c) {
  if (code.length() == 0) throw ContractViolation("alpha: the root subset has no alpha");
  if (!(c > 0.0)) throw ContractViolation("alpha: c must be positive");
  return child_alpha(code.length() - 1, c);
}

Interval cell_boundaries(const PathCode& code, const CentringGaussian& centring) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double cells = std::ldexp(1.0, code.length());
  const double k = static_cast<double>(code.index());
  auto quantile = [&](double q) {
    if (q <= 0.0) return -inf;
    if (q >= 1.0) return inf;
    return centring.mean + centring.sd * stats::normal_quantile(q);
  };
  return Interval{quantile(k / cells), quantile((k + 1.0) / cells)};
}

PathCode path_of(double x, const CentringGaussian& centring, int depth) {
  if (!std::isfinite(x)) throw InputError("path_of: non-finite observation");
  if (depth < 0 || depth > kMaxDepth) throw ContractViolation("path_of: bad depth");
  const double z = (x - centring.mean) / centring.sd;
  const double g = stats::normal_cdf(z);
  // Cells are (k/2^D, (k+1)/2^D]: k is the largest integer strictly below g·2^D.
  const double scaled = std::ldexp(g, depth);
  const double cells = std::ldexp(1.0, depth);
  double k = std::ceil(scaled) - 1.0;
  k = std::clamp(k, 0.0, cells - 1.0);
  return PathCode(static_cast<std::uint64_t>(k), depth);
}

PathCode path_of(double x, const PolyaTreeSpec& spec) {
  return path_of(x, spec.centring, spec.depth);
}

CellCounts::CellCounts(int depth) : depth_(depth) {
  if (depth < 0 || depth > kMaxDepth) throw ContractViolation("CellCounts: bad depth");
  layers_.resize(static_cast<std::size_t>(depth) + 1);
}

CellCounts CellCounts::from_leaves(std::span<const PathCode> leaves,
                                   std::span<const int> labels, int depth) {
  if (leaves.size() != labels.size()) {
    throw InputError("accumulate_counts: column and labels differ in length");
  }
  std::vector<std::pair<std::uint64_t, int>> sorted;
  sorted.reserve(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw InputError("accumulate_counts: labels must be 0 or 1");
    }
    if (leaves[i].length() != depth) {
      throw ContractViolation("accumulate_counts: leaf path has the wrong depth");
    }
    sorted.emplace_back(leaves[i].index(), labels[i]);
  }
  std::sort(sorted.begin(), sorted.end());

  CellCounts counts(depth);
  for (int l = 0; l <= depth; ++l) {
    Layer& layer = counts.layers_[static_cast<std::size_t>(l)];
    const int shift = depth - l;
    for (const auto& [leaf, label] : sorted) {
      const std::uint64_t key = leaf >> shift;
      if (layer.empty() || layer.back().first != key) layer.emplace_back(key, NodeCounts{});
      if (label == 1) {
        ++layer.back().second.group1;
      } else {
        ++layer.back().second.group0;
      }
    }
  }
  return counts;
}

CellCounts CellCounts::from_nodes(int depth,
                                  std::span<const std::pair<PathCode, NodeCounts>> nodes) {
  CellCounts counts(depth);
  for (const auto& [code, node] : nodes) {
    if (code.length() > depth) throw InputError("count node deeper than the tree depth");
    if (node.total() == 0) continue;
    counts.layers_[static_cast<std::size_t>(code.length())].emplace_back(code.index(), node);
  }
  for (auto& layer : counts.layers_) {
    std::sort(layer.begin(), layer.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < layer.size(); ++i) {
      if (layer[i].first == layer[i - 1].first) throw InputError("duplicate count node");
    }
  }
  if (!counts.is_consistent()) {
    throw InputError("count nodes violate parent-child conservation");
  }
  return counts;
}

NodeCounts CellCounts::at(const PathCode& code) const {
  if (code.length() > depth_) return NodeCounts{};
  const Layer& layer = layers_[static_cast<std::size_t>(code.length())];
  auto it = std::lower_bound(layer.begin(), layer.end(), code.index(),
                             [](const auto& node, std::uint64_t key) { return node.first < key; });
  if (it == layer.end() || it->first != code.index()) return NodeCounts{};
  return it->second;
}

NodeCounts CellCounts::root() const { return at(PathCode{}); }

std::size_t CellCounts::occupied_nodes() const {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.size();
  return total;
}

std::vector<std::pair<PathCode, NodeCounts>> CellCounts::nodes() const {
  std::vector<std::pair<PathCode, NodeCounts>> out;
  out.reserve(occupied_nodes());
  for (int l = 0; l <= depth_; ++l) {
    for (const auto& [index, node] : layers_[static_cast<std::size_t>(l)]) {
      out.emplace_back(PathCode(index, l), node);
    }
  }
  return out;
}

bool CellCounts::is_consistent() const {
  for (int l = 0; l < depth_; ++l) {
    const Layer& parents = layers_[static_cast<std::size_t>(l)];
    const Layer& children = layers_[static_cast<std::size_t>(l) + 1];
    // Children of parent k are 2k and 2k+1; both layers are sorted, so a
    // single merge pass checks every parent and catches orphaned children.
    std::size_t c = 0;
    for (const auto& [index, node] : parents) {
      NodeCounts sum;
      while (c < children.size() && (children[c].first >> 1) == index) {
        sum.group1 += children[c].second.group1;
        sum.group0 += children[c].second.group0;
        ++c;
      }
      if (c < children.size() && (children[c].first >> 1) < index) return false;
      if (!(sum == node)) return false;
    }
    if (c != children.size()) return false;
  }
  return true;
}

CellCounts accumulate_counts(std::span<const double> column, std::span<const int> labels,
                             const PolyaTreeSpec& spec) {
  if (column.empty()) throw InputError("accumulate_counts: empty column");
  if (column.size() != labels.size()) {
    throw InputError("accumulate_counts: column and labels differ in length");
  }
  validate(spec);
  std::vector<PathCode> leaves;
  leaves.reserve(column.size());
  for (double x : column) leaves.push_back(path_of(x, spec));
  return CellCounts::from_leaves(leaves, labels, spec.depth);
}

double predictive_density(double x, const CellCounts& counts, int group,
                          const PolyaTreeSpec& spec) {
  validate(spec);
  if (group != 0 && group != 1) throw InputError("predictive_density: group must be 0 or 1");
  const PathCode leaf = path_of(x, spec);
  const double z = (x - spec.centring.mean) / spec.centring.sd;
  double density = stats::normal_pdf(z) / spec.centring.sd;
  if (counts.depth() != spec.depth) {
    throw ContractViolation("predictive_density: counts and spec disagree on depth");
  }
  NodeCounts parent = counts.at(PathCode{});
  for (int l = 0; l < spec.depth; ++l) {
    const NodeCounts child = counts.at(leaf.prefix(l + 1));
    const double a = child_alpha(l, spec.c);
    density *= 2.0 * (a + child.group(group)) / (2.0 * a + parent.group(group));
    parent = child;
  }
  return density;
}

}  // namespace vnpda
