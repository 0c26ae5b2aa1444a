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

namespace detail {

DenseVector naive_bayes_proba(const TrainedModel& model, const SparseVector& x) {
  const auto& nb = std::get<NaiveBayesModel>(model.params);
  DenseVector scores = nb.log_prior;
  for (SparseVector::InnerIterator it(x); it; ++it) {
    scores += it.value() * nb.log_likelihood.col(it.index());
  }
  // log-sum-exp over the classes with nonzero prior; -inf entries drop to 0.
  double m = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < scores.size(); ++c) m = std::max(m, scores[c]);
  DenseVector p(scores.size());
  double z = 0.0;
  for (int c = 0; c < scores.size(); ++c) {
    p[c] = std::isinf(scores[c]) ? 0.0 : std::exp(scores[c] - m);
    z += p[c];
  }
  p /= z;
  return p;
}

}  // namespace detail

// Multinomial model over TF-IDF weights treated as fractional counts.
TrainedModel train_naive_bayes(const FeatureMatrix& X, const std::vector<int>& y,
                               const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::naive_bayes, spec, n_features, k, *pure);
  }

  const double alpha = spec.params.nb.alpha;
  DenseMatrix feature_sums = DenseMatrix::Zero(k, n_features);
  DenseVector class_counts = DenseVector::Zero(k);
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    const int c = y[static_cast<std::size_t>(r)];
    class_counts[c] += 1.0;
    for (FeatureMatrix::InnerIterator it(X, r); it; ++it) {
      if (it.value() < 0.0) {
        throw std::invalid_argument("train_naive_bayes: negative feature value");
      }
      feature_sums(c, it.col()) += it.value();
    }
  }

  NaiveBayesModel nb;
  nb.log_prior.resize(k);
  nb.log_likelihood.resize(k, n_features);
  const double n = static_cast<double>(y.size());
  for (int c = 0; c < k; ++c) {
    nb.log_prior[c] = std::log(class_counts[c] / n);  // -inf for absent classes
    const double denom = feature_sums.row(c).sum() + alpha * n_features;
    nb.log_likelihood.row(c) =
        (feature_sums.row(c).array() + alpha).log() - std::log(denom);
  }

  TrainedModel model;
  model.family = Family::naive_bayes;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  model.params = std::move(nb);
  return model;
}

}  // namespace textml
