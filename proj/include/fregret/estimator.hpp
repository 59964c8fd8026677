// Copyright 2026 The fregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREGRET_ESTIMATOR_HPP
#define FREGRET_ESTIMATOR_HPP

// Regret estimators: fit on (feature vector, target, weight) rows, predict a
// real per feature vector. Two families live here: an exact memorizer and
// greedy variance-reduction regression trees (single or bagged).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fregret/error.hpp"

namespace fregret {

/// Training rows with a fixed feature dimension, stored row-major.
class Dataset {
 public:
  explicit Dataset(std::size_t dim) : dim_(dim) {}

  void add(std::span<const double> phi, double target, double weight = 1.0) {
    if (phi.size() != dim_) throw InvalidArgument("feature dimension mismatch in Dataset::add");
    if (!(weight >= 0.0)) throw InvalidArgument("row weight must be nonnegative");
    features_.insert(features_.end(), phi.begin(), phi.end());
    targets_.push_back(target);
    weights_.push_back(weight);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return targets_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features_).subspan(i * dim_, dim_);
  }
  double feature(std::size_t i, std::size_t j) const { return features_[i * dim_ + j]; }
  double target(std::size_t i) const { return targets_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> targets() const noexcept { return targets_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::size_t dim_;
  std::vector<double> features_;
  std::vector<double> targets_;
  std::vector<double> weights_;
};

/// Weighted variance of the targets: the training MSE of the best constant predictor.
inline double weighted_variance(const Dataset& data) {
  double w = 0.0, sw = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    w += data.weight(i);
    sw += data.weight(i) * data.target(i);
  }
  if (w <= 0.0) return 0.0;
  const double mean = sw / w;
  double ss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = data.target(i) - mean;
    ss += data.weight(i) * d * d;
  }
  return ss / w;
}

class RegretEstimator {
 public:
  virtual ~RegretEstimator() = default;

  /// Replaces the model with one trained on `data`.
  virtual void fit(const Dataset& data) = 0;
  /// Unfitted estimators predict 0.
  virtual double predict(std::span<const double> phi) const = 0;
  /// Leaf count for trees, stored entries for the memorizer.
  virtual std::size_t complexity() const = 0;
};

/// Weighted mean squared error of `model` over `data`.
inline double training_mse(const RegretEstimator& model, const Dataset& data) {
  double w = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = model.predict(data.row(i)) - data.target(i);
    w += data.weight(i);
    ss += data.weight(i) * d * d;
  }
  return w > 0.0 ? ss / w : 0.0;
}

namespace detail {

struct FeatureHash {
  std::size_t operator()(const std::vector<double>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (double x : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/// Exact memorizer keyed by the full feature vector. Two rows with equal
/// features but different targets mean the featurization aliases distinct
/// (infoset, action) pairs, which is reported as a ValidationError.
class TabularEstimator final : public RegretEstimator {
 public:
  void fit(const Dataset& data) override {
    table_.clear();
    table_.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto phi = data.row(i);
      auto [it, inserted] = table_.try_emplace(std::vector<double>(phi.begin(), phi.end()), data.target(i));
      if (!inserted && it->second != data.target(i))
        throw ValidationError("feature collision: identical feature vectors with different targets (row " +
                              std::to_string(i) + ")");
    }
  }

  double predict(std::span<const double> phi) const override {
    auto it = table_.find(std::vector<double>(phi.begin(), phi.end()));
    return it == table_.end() ? 0.0 : it->second;
  }

  std::size_t complexity() const override { return table_.size(); }

 private:
  std::unordered_map<std::vector<double>, double, detail::FeatureHash> table_;
};

inline std::unique_ptr<RegretEstimator> tabular_estimator() { return std::make_unique<TabularEstimator>(); }

struct TreeConfig {
  double min_leaf_weight = 1.0;
  int max_depth = -1;  // negative: unlimited
};

/// Binary regression tree; rows with phi[feature] <= threshold go left.
/// Nodes are stored in pre-order with the root at index 0.
class RegressionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf prediction

    bool is_leaf() const noexcept { return feature < 0; }
  };

  RegressionTree() = default;
  RegressionTree(std::size_t dim, std::vector<Node> nodes) : dim_(dim), nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw InvalidArgument("tree needs at least one node");
  }

  double predict(std::span<const double> phi) const {
    if (phi.size() != dim_)
      throw InvalidArgument("feature dimension " + std::to_string(phi.size()) + " does not match tree dimension " +
                            std::to_string(dim_));
    if (nodes_.empty()) return 0.0;
    int id = 0;
    while (!nodes_[static_cast<std::size_t>(id)].is_leaf()) {
      const Node& n = nodes_[static_cast<std::size_t>(id)];
      id = phi[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(id)].value;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  bool empty() const noexcept { return nodes_.empty(); }

  std::size_t num_leaves() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
  }

  int depth() const {
    auto walk = [&](auto&& self, int id) -> int {
      const Node& n = nodes_[static_cast<std::size_t>(id)];
      return n.is_leaf() ? 0 : 1 + std::max(self(self, n.left), self(self, n.right));
    };
    return nodes_.empty() ? 0 : walk(walk, 0);
  }

  friend bool operator==(const RegressionTree& a, const RegressionTree& b) {
    if (a.dim_ != b.dim_ || a.nodes_.size() != b.nodes_.size()) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
      const Node& x = a.nodes_[i];
      const Node& y = b.nodes_[i];
      if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left || x.right != y.right ||
          x.value != y.value)
        return false;
    }
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Node> nodes_;
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;  // weighted SSE reduction
};

namespace detail {

/// Threshold strictly separating lo < hi: their midpoint, unless rounding lands on hi.
inline double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

inline double leaf_mean(const Dataset& data, std::span<const std::size_t> rows) {
  double w = 0.0, sw = 0.0;
  for (std::size_t r : rows) {
    w += data.weight(r);
    sw += data.weight(r) * data.target(r);
  }
  return w > 0.0 ? sw / w : 0.0;
}

}  // namespace detail

/// Best variance-reduction split of `rows`. Candidates are midpoints between
/// consecutive distinct feature values; both sides must carry at least
/// `min_leaf_weight`. Ties go to the lowest feature, then the lowest threshold.
inline std::optional<Split> best_split(const Dataset& data, std::span<const std::size_t> rows,
                                       double min_leaf_weight) {
  double total_w = 0.0, total_sw = 0.0, total_sq = 0.0;
  for (std::size_t r : rows) {
    const double w = data.weight(r), y = data.target(r);
    total_w += w;
    total_sw += w * y;
    total_sq += w * y * y;
  }
  if (total_w <= 0.0) return std::nullopt;
  // Below this the reduction is indistinguishable from rounding noise.
  const double min_gain = 1e-12 * total_sq;

  std::optional<Split> best;
  std::vector<std::size_t> order(rows.begin(), rows.end());
  for (std::size_t j = 0; j < data.dim(); ++j) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double fa = data.feature(a, j), fb = data.feature(b, j);
      return fa < fb || (fa == fb && a < b);
    });
    double wl = 0.0, swl = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      wl += data.weight(order[k]);
      swl += data.weight(order[k]) * data.target(order[k]);
      const double lo = data.feature(order[k], j), hi = data.feature(order[k + 1], j);
      if (lo == hi) continue;
      const double wr = total_w - wl;
      if (wl < min_leaf_weight || wr < min_leaf_weight || wl <= 0.0 || wr <= 0.0) continue;
      const double diff = swl / wl - (total_sw - swl) / wr;
      const double gain = wl * wr / total_w * diff * diff;
      if (gain <= min_gain) continue;
      if (!best || gain > best->gain * (1.0 + 1e-12)) best = Split{static_cast<int>(j), detail::midpoint(lo, hi), gain};
    }
  }
  return best;
}

/// Greedy top-down CART fit on weighted squared error.
inline RegressionTree fit_tree(const Dataset& data, const TreeConfig& config = {}) {
  if (data.empty()) throw InvalidArgument("cannot fit a tree on an empty dataset");
  std::vector<RegressionTree::Node> nodes;
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});

  auto grow = [&](auto&& self, std::vector<std::size_t> rows, int depth) -> int {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    std::optional<Split> split;
    if (config.max_depth < 0 || depth < config.max_depth) split = best_split(data, rows, config.min_leaf_weight);
    if (!split) {
      nodes[static_cast<std::size_t>(id)].value = detail::leaf_mean(data, rows);
      return id;
    }
    std::vector<std::size_t> left, right;
    for (std::size_t r : rows)
      (data.feature(r, static_cast<std::size_t>(split->feature)) <= split->threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const int l = self(self, std::move(left), depth + 1);
    const int r = self(self, std::move(right), depth + 1);
    auto& n = nodes[static_cast<std::size_t>(id)];
    n.feature = split->feature;
    n.threshold = split->threshold;
    n.left = l;
    n.right = r;
    return id;
  };
  grow(grow, std::move(all), 0);
  return RegressionTree(data.dim(), std::move(nodes));
}

inline std::size_t model_complexity(const RegressionTree& tree) { return tree.num_leaves(); }

// Text format, one record per line in pre-order:
//   fregret-tree v1 dim=<d>
//   node,<feature>,<threshold>
//   leaf,<value>
// Reals are printed with 17 significant digits so the round trip is exact.

inline void write_tree(std::ostream& out, const RegressionTree& tree) {
  char buf[64];
  out << "fregret-tree v1 dim=" << tree.dim() << '\n';
  auto walk = [&](auto&& self, int id) -> void {
    const auto& n = tree.nodes()[static_cast<std::size_t>(id)];
    if (n.is_leaf()) {
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out << "leaf," << buf << '\n';
      return;
    }
    std::snprintf(buf, sizeof buf, "%.17g", n.threshold);
    out << "node," << n.feature << ',' << buf << '\n';
    self(self, n.left);
    self(self, n.right);
  };
  if (!tree.empty()) walk(walk, 0);
}

inline std::string serialize_tree(const RegressionTree& tree) {
  std::ostringstream out;
  write_tree(out, tree);
  return out.str();
}

inline RegressionTree read_tree(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("fregret-tree v1 dim=", 0) != 0)
    throw ValidationError("tree file: missing 'fregret-tree v1' header");
  std::size_t dim = 0;
  try {
    dim = std::stoul(line.substr(std::strlen("fregret-tree v1 dim=")));
  } catch (const std::exception&) {
    throw ValidationError("tree file: bad dimension in header");
  }
  std::vector<RegressionTree::Node> nodes;
  int line_no = 1;
  auto parse_real = [&](const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty())
      throw ValidationError("tree file line " + std::to_string(line_no) + ": bad number '" + text + "'");
    return v;
  };
  auto parse = [&](auto&& self) -> int {
    if (!std::getline(in, line)) throw ValidationError("tree file: unexpected end of input");
    ++line_no;
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (line.rfind("leaf,", 0) == 0) {
      nodes[static_cast<std::size_t>(id)].value = parse_real(line.substr(5));
      return id;
    }
    if (line.rfind("node,", 0) != 0)
      throw ValidationError("tree file line " + std::to_string(line_no) + ": expected node or leaf");
    const auto comma = line.find(',', 5);
    if (comma == std::string::npos)
      throw ValidationError("tree file line " + std::to_string(line_no) + ": missing threshold");
    const double feature = parse_real(line.substr(5, comma - 5));
    if (feature < 0 || feature >= static_cast<double>(dim) || feature != static_cast<int>(feature))
      throw ValidationError("tree file line " + std::to_string(line_no) + ": feature index out of range");
    const double threshold = parse_real(line.substr(comma + 1));
    const int l = self(self);
    const int r = self(self);
    auto& n = nodes[static_cast<std::size_t>(id)];
    n.feature = static_cast<int>(feature);
    n.threshold = threshold;
    n.left = l;
    n.right = r;
    return id;
  };
  parse(parse);
  return RegressionTree(dim, std::move(nodes));
}

inline RegressionTree parse_tree(const std::string& text) {
  std::istringstream in(text);
  return read_tree(in);
}

/// A single regression tree refit from scratch on every call to fit.
class TreeEstimator final : public RegretEstimator {
 public:
  explicit TreeEstimator(TreeConfig config = {}) : config_(config) {}

  void fit(const Dataset& data) override { tree_ = fit_tree(data, config_); }
  double predict(std::span<const double> phi) const override { return tree_.empty() ? 0.0 : tree_.predict(phi); }
  std::size_t complexity() const override { return tree_.empty() ? 0 : tree_.num_leaves(); }
  const RegressionTree& tree() const noexcept { return tree_; }

 private:
  TreeConfig config_;
  RegressionTree tree_;
};

/// Bagged trees: each member is fit on a bootstrap resample (expressed as
/// integer weight multipliers) drawn from a seeded generator; predictions are averaged.
class TreeEnsembleEstimator final : public RegretEstimator {
 public:
  TreeEnsembleEstimator(int num_trees, std::uint64_t seed, TreeConfig config = {})
      : num_trees_(num_trees), seed_(seed), config_(config) {
    if (num_trees < 1) throw InvalidArgument("ensemble needs at least one tree");
  }

  void fit(const Dataset& data) override {
    if (data.empty()) throw InvalidArgument("cannot fit an ensemble on an empty dataset");
    trees_.clear();
    std::mt19937_64 rng(seed_);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    for (int t = 0; t < num_trees_; ++t) {
      std::vector<double> counts(data.size(), 0.0);
      for (std::size_t i = 0; i < data.size(); ++i) counts[pick(rng)] += 1.0;
      Dataset sample(data.dim());
      for (std::size_t i = 0; i < data.size(); ++i)
        if (counts[i] > 0.0) sample.add(data.row(i), data.target(i), data.weight(i) * counts[i]);
      trees_.push_back(fit_tree(sample, config_));
    }
  }

  double predict(std::span<const double> phi) const override {
    if (trees_.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& t : trees_) sum += t.predict(phi);
    return sum / static_cast<double>(trees_.size());
  }

  std::size_t complexity() const override {
    std::size_t n = 0;
    for (const auto& t : trees_) n += t.num_leaves();
    return n;
  }

  const std::vector<RegressionTree>& trees() const noexcept { return trees_; }

 private:
  int num_trees_;
  std::uint64_t seed_;
  TreeConfig config_;
  std::vector<RegressionTree> trees_;
};

}  // namespace fregret

#endif  // FREGRET_ESTIMATOR_HPP
