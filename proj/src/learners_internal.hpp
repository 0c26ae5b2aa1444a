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

#ifndef TEXTML_LEARNERS_INTERNAL_HPP
#define TEXTML_LEARNERS_INTERNAL_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "textml/learners.hpp"

namespace textml::detail {

// Validates |X| == |y| >= 1 and label range; returns the effective class
// count (n_classes, or max(y) + 1 when n_classes == 0).
int check_training_input(const FeatureMatrix& X, const std::vector<int>& y, int n_classes);

// The single distinct class when y is pure, nullopt otherwise.
std::optional<int> single_class(const std::vector<int>& y);

TrainedModel constant_model(Family family, const AlgorithmSpec& spec, int n_features,
                            int n_classes, int class_index);

int majority_class(const std::vector<int>& y, int n_classes);

void check_predict_input(const TrainedModel& model, const SparseVector& x);

inline void softmax_inplace(DenseVector& v) {
  const double m = v.maxCoeff();
  v = (v.array() - m).exp();
  v /= v.sum();
}

inline int argmax_lowest(const DenseVector& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

// Per-feature nonzero (value, row) entries sorted by value then row. Zeros
// are implicit; sweeps over a column re-insert them as a single group.
struct ColumnEntry {
  Scalar value;
  int row;
};

struct SortedColumns {
  Eigen::Index n_rows = 0;
  std::vector<std::vector<ColumnEntry>> cols;

  static SortedColumns build(const FeatureMatrix& X) {
    SortedColumns sc;
    sc.n_rows = X.rows();
    sc.cols.resize(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
      for (FeatureMatrix::InnerIterator it(X, r); it; ++it) {
        sc.cols[static_cast<std::size_t>(it.col())].push_back(
            ColumnEntry{it.value(), static_cast<int>(r)});
      }
    }
    for (auto& col : sc.cols) {
      std::sort(col.begin(), col.end(), [](const ColumnEntry& a, const ColumnEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.row < b.row;
      });
    }
    return sc;
  }
};

}  // namespace textml::detail

#endif  // TEXTML_LEARNERS_INTERNAL_HPP
