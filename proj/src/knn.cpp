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

#include <algorithm>
#include <numeric>

#include "learners_internal.hpp"

namespace textml {

namespace detail {

// Cosine similarity reduces to the dot product on L2-normalized rows.
DenseVector knn_proba(const TrainedModel& model, const SparseVector& x) {
  const auto& knn = std::get<KnnModel>(model.params);
  const auto n = static_cast<std::size_t>(knn.rows.rows());
  const DenseVector xd = DenseVector(x);
  const DenseVector sims = knn.rows * xd;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto m = static_cast<std::size_t>(
      std::min<std::size_t>(static_cast<std::size_t>(knn.k), n));
  // Similarity ties resolve to the lower row index.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [&](int a, int b) {
                      if (sims[a] != sims[b]) return sims[a] > sims[b];
                      return a < b;
                    });

  DenseVector votes = DenseVector::Zero(model.n_classes);
  for (std::size_t i = 0; i < m; ++i) {
    votes[knn.labels[static_cast<std::size_t>(order[i])]] += 1.0;
  }
  votes /= static_cast<double>(m);
  return votes;
}

}  // namespace detail

TrainedModel train_knn(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  TrainedModel model;
  model.family = Family::knn;
  model.n_features = static_cast<int>(X.cols());
  model.n_classes = k;
  model.spec = spec;
  model.params = KnnModel{spec.params.knn.k, X, y};
  return model;
}

}  // namespace textml
