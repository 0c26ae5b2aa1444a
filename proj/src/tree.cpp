/*
 * Copyright 2026 The textml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <limits>

#include "learners_internal.hpp"

namespace textml {

namespace {

using detail::ColumnEntry;
using detail::SortedColumns;

struct SplitCandidate {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double score = std::numeric_limits<double>::infinity();  // n_L*gini_L + n_R*gini_R
};

double gini_times_n(const DenseVector& counts, double n) {
  if (n <= 0.0) return 0.0;
  // n * (1 - sum (c/n)^2) = n - (sum c^2)/n
  return n - counts.squaredNorm() / n;
}

// Groups the node's values of one feature (nonzeros from the presorted
// column plus one implicit zero group) by distinct value, in ascending
// order, with per-class counts.
struct ValueGroup {
  double value;
  DenseVector counts;
};

std::vector<ValueGroup> column_groups(const std::vector<ColumnEntry>& col,
                                      const std::vector<char>& in_node,
                                      const std::vector<int>& y, int n_classes,
                                      const DenseVector& node_counts, double node_size) {
  std::vector<ValueGroup> groups;
  DenseVector nonzero_counts = DenseVector::Zero(n_classes);
  for (const ColumnEntry& e : col) {
    if (!in_node[static_cast<std::size_t>(e.row)]) continue;
    if (groups.empty() || groups.back().value != e.value) {
      groups.push_back(ValueGroup{e.value, DenseVector::Zero(n_classes)});
    }
    groups.back().counts[y[static_cast<std::size_t>(e.row)]] += 1.0;
    nonzero_counts[y[static_cast<std::size_t>(e.row)]] += 1.0;
  }
  const double zeros = node_size - nonzero_counts.sum();
  if (zeros > 0.0) {
    ValueGroup zero_group{0.0, node_counts - nonzero_counts};
    auto pos = groups.begin();
    while (pos != groups.end() && pos->value < 0.0) ++pos;
    groups.insert(pos, std::move(zero_group));
  }
  return groups;
}

}  // namespace

namespace detail {

DenseVector tree_proba(const TrainedModel& model, const SparseVector& x) {
  const auto& tree = std::get<TreeModel>(model.params);
  int node = 0;
  while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(node)];
    node = x.coeff(n.feature) < n.threshold ? n.left : n.right;
  }
  const DenseVector& counts = tree.nodes[static_cast<std::size_t>(node)].counts;
  // Laplace-smoothed leaf distribution.
  const double n = counts.sum();
  DenseVector p = (counts.array() + 1.0) / (n + static_cast<double>(model.n_classes));
  return p;
}

}  // namespace detail

TrainedModel train_decision_tree(const FeatureMatrix& X, const std::vector<int>& y,
                                 const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::decision_tree, spec, n_features, k, *pure);
  }

  const SortedColumns columns = SortedColumns::build(X);
  const auto n = static_cast<std::size_t>(X.rows());

  TreeModel tree;
  struct Pending {
    int node;
    std::vector<int> rows;
    int depth;
  };
  std::vector<Pending> stack;

  auto class_counts_of = [&](const std::vector<int>& rows) {
    DenseVector counts = DenseVector::Zero(k);
    for (int r : rows) counts[y[static_cast<std::size_t>(r)]] += 1.0;
    return counts;
  };

  {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    tree.nodes.push_back(TreeNode{});
    stack.push_back(Pending{0, std::move(all), 0});
  }

  std::vector<char> in_node(n, 0);
  while (!stack.empty()) {
    Pending task = std::move(stack.back());
    stack.pop_back();
    TreeNode& node = tree.nodes[static_cast<std::size_t>(task.node)];
    DenseVector counts = class_counts_of(task.rows);
    const double node_size = counts.sum();

    const bool pure = counts.maxCoeff() == node_size;
    if (pure || task.depth >= spec.params.tree.max_depth ||
        static_cast<int>(task.rows.size()) < spec.params.tree.min_samples_split) {
      node.counts = std::move(counts);
      continue;
    }

    for (int r : task.rows) in_node[static_cast<std::size_t>(r)] = 1;

    // Scan features in ascending order, thresholds ascending within each;
    // strict improvement keeps the first of any tied candidates.
    SplitCandidate best;
    for (int f = 0; f < n_features; ++f) {
      const auto groups = column_groups(columns.cols[static_cast<std::size_t>(f)], in_node, y,
                                        k, counts, node_size);
      if (groups.size() < 2) continue;
      DenseVector left = DenseVector::Zero(k);
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        left += groups[g].counts;
        const double n_left = left.sum();
        const DenseVector right = counts - left;
        const double score =
            gini_times_n(left, n_left) + gini_times_n(right, node_size - n_left);
        if (score < best.score) {
          best.found = true;
          best.feature = f;
          best.threshold = (groups[g].value + groups[g + 1].value) / 2.0;
          best.score = score;
        }
      }
    }

    for (int r : task.rows) in_node[static_cast<std::size_t>(r)] = 0;

    if (!best.found) {  // every feature constant on this node; forced leaf
      node.counts = std::move(counts);
      continue;
    }

    std::vector<int> left_rows;
    std::vector<int> right_rows;
    for (int r : task.rows) {
      if (X.coeff(r, best.feature) < best.threshold) {
        left_rows.push_back(r);
      } else {
        right_rows.push_back(r);
      }
    }

    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = static_cast<int>(tree.nodes.size());
    node.right = node.left + 1;
    const int left_id = node.left;
    const int right_id = node.right;
    tree.nodes.push_back(TreeNode{});
    tree.nodes.push_back(TreeNode{});
    stack.push_back(Pending{right_id, std::move(right_rows), task.depth + 1});
    stack.push_back(Pending{left_id, std::move(left_rows), task.depth + 1});
  }

  TrainedModel model;
  model.family = Family::decision_tree;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  model.params = std::move(tree);
  return model;
}

}  // namespace textml
