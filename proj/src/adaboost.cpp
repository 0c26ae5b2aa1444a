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

constexpr double kEpsilonFloor = 1e-10;  // caps alpha when a stump is perfect

struct StumpFit {
  bool found = false;
  Stump stump;
  double error = std::numeric_limits<double>::infinity();
};

int argmax_class(const DenseVector& v) {
  int best = 0;
  for (int c = 1; c < v.size(); ++c) {
    if (v[c] > v[best]) best = c;
  }
  return best;
}

// Minimizes weighted misclassification error over (feature, threshold) with
// each side predicting its weighted-majority class. Thresholds are midpoints
// of consecutive distinct observed values, zeros included implicitly.
StumpFit fit_stump(const SortedColumns& columns, const std::vector<int>& y,
                   const DenseVector& weights, int n_classes) {
  StumpFit best;
  const double total = weights.sum();
  DenseVector total_by_class = DenseVector::Zero(n_classes);
  for (std::size_t i = 0; i < y.size(); ++i) {
    total_by_class[y[i]] += weights[static_cast<Eigen::Index>(i)];
  }

  struct Group {
    double value;
    DenseVector mass;
  };
  std::vector<Group> groups;
  for (std::size_t f = 0; f < columns.cols.size(); ++f) {
    const auto& col = columns.cols[f];
    groups.clear();
    DenseVector nonzero_mass = DenseVector::Zero(n_classes);
    for (const ColumnEntry& e : col) {
      if (groups.empty() || groups.back().value != e.value) {
        groups.push_back(Group{e.value, DenseVector::Zero(n_classes)});
      }
      const double w = weights[e.row];
      groups.back().mass[y[static_cast<std::size_t>(e.row)]] += w;
      nonzero_mass[y[static_cast<std::size_t>(e.row)]] += w;
    }
    if (static_cast<Eigen::Index>(col.size()) < columns.n_rows) {
      Group zero_group{0.0, total_by_class - nonzero_mass};
      auto pos = groups.begin();
      while (pos != groups.end() && pos->value < 0.0) ++pos;
      groups.insert(pos, std::move(zero_group));
    }
    if (groups.size() < 2) continue;

    DenseVector left = DenseVector::Zero(n_classes);
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
      left += groups[g].mass;
      const DenseVector right = total_by_class - left;
      const int left_class = argmax_class(left);
      const int right_class = argmax_class(right);
      const double error = total - left[left_class] - right[right_class];
      if (error < best.error) {
        best.found = true;
        best.error = error;
        best.stump.feature = static_cast<int>(f);
        best.stump.threshold = (groups[g].value + groups[g + 1].value) / 2.0;
        best.stump.left_class = left_class;
        best.stump.right_class = right_class;
      }
    }
  }
  return best;
}

// Per-row stump predictions; rows absent from the column hold value zero.
std::vector<int> stump_predictions(const Stump& stump, const SortedColumns& columns) {
  const int zero_side = 0.0 < stump.threshold ? stump.left_class : stump.right_class;
  std::vector<int> pred(static_cast<std::size_t>(columns.n_rows), zero_side);
  for (const ColumnEntry& e : columns.cols[static_cast<std::size_t>(stump.feature)]) {
    pred[static_cast<std::size_t>(e.row)] =
        e.value < stump.threshold ? stump.left_class : stump.right_class;
  }
  return pred;
}

}  // namespace

namespace detail {

DenseVector adaboost_proba(const TrainedModel& model, const SparseVector& x) {
  const auto& ada = std::get<AdaBoostModel>(model.params);
  DenseVector margins = DenseVector::Zero(model.n_classes);
  for (const Stump& s : ada.stumps) {
    const int c = x.coeff(s.feature) < s.threshold ? s.left_class : s.right_class;
    margins[c] += s.alpha;
  }
  margins /= ada.alpha_sum;
  softmax_inplace(margins);
  return margins;
}

}  // namespace detail

// SAMME over depth-1 stumps: alpha_t = ln((1 - eps_t)/eps_t) + ln(K - 1),
// weights scaled by exp(alpha_t) on misses then renormalized. Rounds with
// eps_t >= 1 - 1/K are discarded (stop); a perfect stump is kept with a
// capped alpha and stops the loop.
TrainedModel train_adaboost(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::adaboost, spec, n_features, k, *pure);
  }

  const SortedColumns columns = SortedColumns::build(X);
  const auto n = y.size();
  DenseVector weights = DenseVector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));

  AdaBoostModel ada;
  std::string warning;
  for (int round = 0; round < spec.params.ada.rounds; ++round) {
    StumpFit fit = fit_stump(columns, y, weights, k);
    if (!fit.found) {
      // No feature separates the rows at all (identical rows, mixed labels).
      warning = "adaboost: no usable stump; falling back to the majority class";
      break;
    }
    const double eps = std::max(fit.error, 0.0);
    if (eps >= 1.0 - 1.0 / static_cast<double>(k) - 1e-12) {
      break;  // no better than random for K classes; discard and stop
    }
    if (eps <= kEpsilonFloor) {
      fit.stump.alpha = std::log((1.0 - kEpsilonFloor) / kEpsilonFloor) +
                        std::log(static_cast<double>(k) - 1.0);
      ada.stumps.push_back(fit.stump);
      break;
    }
    fit.stump.alpha =
        std::log((1.0 - eps) / eps) + std::log(static_cast<double>(k) - 1.0);
    ada.stumps.push_back(fit.stump);

    const std::vector<int> pred = stump_predictions(fit.stump, columns);
    const double factor = std::exp(fit.stump.alpha);
    for (std::size_t i = 0; i < n; ++i) {
      if (pred[i] != y[i]) weights[static_cast<Eigen::Index>(i)] *= factor;
    }
    weights /= weights.sum();
  }

  if (ada.stumps.empty()) {
    TrainedModel model = detail::constant_model(Family::adaboost, spec, n_features, k,
                                                detail::majority_class(y, k));
    model.warnings.push_back(warning.empty()
                                 ? "adaboost: no stump beat random guessing; falling back to "
                                   "the majority class"
                                 : warning);
    return model;
  }

  for (const Stump& s : ada.stumps) ada.alpha_sum += s.alpha;

  TrainedModel model;
  model.family = Family::adaboost;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  model.params = std::move(ada);
  return model;
}

}  // namespace textml
