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
#include <numeric>

#include "learners_internal.hpp"

namespace textml {

namespace {

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double softplus(double s) {
  if (s > 35.0) return s;
  if (s < -35.0) return std::exp(s);
  return std::log1p(std::exp(s));
}

// margins = W x + b without densifying x.
DenseVector margins_of(const DenseMatrix& W, const DenseVector& b, const SparseVector& x) {
  DenseVector m = b;
  for (SparseVector::InnerIterator it(x); it; ++it) {
    m += it.value() * W.col(it.index());
  }
  return m;
}

// Row-wise softmax probabilities for multinomial logistic regression.
DenseMatrix row_softmax(const DenseMatrix& logits) {
  DenseMatrix p = logits;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double m = p.row(i).maxCoeff();
    p.row(i) = (p.row(i).array() - m).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

}  // namespace

namespace detail {

DenseVector linear_proba(const TrainedModel& model, const SparseVector& x) {
  const auto& lin = std::get<LinearModel>(model.params);
  if (lin.binary_sigmoid) {
    const double s = margins_of(lin.weights, lin.bias, x)[0];
    DenseVector p(2);
    p[1] = sigmoid(s);
    p[0] = 1.0 - p[1];
    return p;
  }
  DenseVector m = margins_of(lin.weights, lin.bias, x);
  switch (model.family) {
    case Family::logistic_regression:
    case Family::sgd:
      softmax_inplace(m);
      return m;
    case Family::svm: {
      // Uncalibrated: per-class sigmoid of the margin, renormalized.
      for (int c = 0; c < m.size(); ++c) m[c] = sigmoid(m[c]);
      m /= m.sum();
      return m;
    }
    default:
      throw std::invalid_argument("linear_proba: unexpected family");
  }
}

}  // namespace detail

double logistic_loss(const FeatureMatrix& X, const std::vector<int>& y, const DenseMatrix& W,
                     const DenseVector& b, double lambda, bool binary) {
  const double n = static_cast<double>(y.size());
  double loss = 0.0;
  if (binary) {
    const DenseVector s = (X * W.row(0).transpose()).eval().array() + b[0];
    for (std::size_t i = 0; i < y.size(); ++i) {
      loss += softplus(s[static_cast<Eigen::Index>(i)]) -
              static_cast<double>(y[i]) * s[static_cast<Eigen::Index>(i)];
    }
  } else {
    const DenseMatrix logits = (X * W.transpose()).eval().rowwise() + b.transpose();
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto row = logits.row(static_cast<Eigen::Index>(i));
      const double m = row.maxCoeff();
      const double lse = m + std::log((row.array() - m).exp().sum());
      loss += lse - row[y[i]];
    }
  }
  return loss / n + 0.5 * lambda * W.squaredNorm();
}

void logistic_gradient(const FeatureMatrix& X, const std::vector<int>& y, const DenseMatrix& W,
                       const DenseVector& b, double lambda, bool binary, DenseMatrix& grad_W,
                       DenseVector& grad_b) {
  const double n = static_cast<double>(y.size());
  if (binary) {
    DenseVector d = (X * W.row(0).transpose()).eval().array() + b[0];
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      d[i] = (sigmoid(d[i]) - static_cast<double>(y[static_cast<std::size_t>(i)])) / n;
    }
    grad_W = (d.transpose() * X) + lambda * W;
    grad_b.resize(1);
    grad_b[0] = d.sum();
  } else {
    DenseMatrix g = row_softmax((X * W.transpose()).eval().rowwise() + b.transpose());
    for (std::size_t i = 0; i < y.size(); ++i) {
      g(static_cast<Eigen::Index>(i), y[i]) -= 1.0;
    }
    g /= n;
    grad_W = (g.transpose() * X) + lambda * W;
    grad_b = g.colwise().sum();
  }
}

// Full-batch gradient descent on cross-entropy + (lambda/2)||W||^2, zero
// initialization, fixed step. K == 2 uses the sigmoid specialization.
TrainedModel train_logistic(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::logistic_regression, spec, n_features, k, *pure);
  }

  const auto& hp = spec.params.logistic;
  const bool binary = (k == 2);
  LinearModel lin;
  lin.binary_sigmoid = binary;
  lin.weights = DenseMatrix::Zero(binary ? 1 : k, n_features);
  lin.bias = DenseVector::Zero(binary ? 1 : k);

  bool converged = false;
  DenseMatrix grad_W;
  DenseVector grad_b;
  for (int iter = 0; iter < hp.max_iters; ++iter) {
    logistic_gradient(X, y, lin.weights, lin.bias, hp.lambda, binary, grad_W, grad_b);
    const double g_inf =
        std::max(grad_W.cwiseAbs().maxCoeff(), grad_b.cwiseAbs().maxCoeff());
    if (g_inf < hp.tol) {
      converged = true;
      break;
    }
    lin.weights -= hp.eta * grad_W;
    lin.bias -= hp.eta * grad_b;
  }

  TrainedModel model;
  model.family = Family::logistic_regression;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  if (!converged) {
    model.warnings.push_back("logistic_regression: gradient descent did not converge within " +
                             std::to_string(hp.max_iters) + " iterations");
  }
  model.params = std::move(lin);
  return model;
}

// Hinge loss + L2 by stochastic subgradient descent with per-epoch seeded
// shuffles and step eta0 / (1 + lambda*eta0*t). Multiclass is handled by one
// one-vs-rest weight vector per class sharing the sample order.
TrainedModel train_sgd(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::sgd, spec, n_features, k, *pure);
  }

  const auto& hp = spec.params.sgd;
  const auto n = y.size();
  DenseMatrix W = DenseMatrix::Zero(k, n_features);
  DenseVector b = DenseVector::Zero(k);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const int i = order[pos];
      const double eta = hp.eta0 / (1.0 + hp.lambda * hp.eta0 * static_cast<double>(t));
      ++t;
      const double scale = std::max(0.0, 1.0 - eta * hp.lambda);

      DenseVector m = b;
      for (FeatureMatrix::InnerIterator it(X, i); it; ++it) {
        m += it.value() * W.col(it.col());
      }
      for (int c = 0; c < k; ++c) {
        const double s = (y[static_cast<std::size_t>(i)] == c) ? 1.0 : -1.0;
        const bool violated = s * m[c] < 1.0;
        W.row(c) *= scale;
        if (violated) {
          for (FeatureMatrix::InnerIterator it(X, i); it; ++it) {
            W(c, it.col()) += eta * s * it.value();
          }
          b[c] += eta * s;
        }
      }
    }
  }

  TrainedModel model;
  model.family = Family::sgd;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  model.params = LinearModel{std::move(W), std::move(b), false};
  return model;
}

// Primal hinge + (lambda/2)||w||^2 by deterministic full-batch subgradient
// descent with step 1/(lambda*t); seed-free. The bias follows the hinge
// subgradient and is not regularized.
TrainedModel train_svm(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes) {
  spec.validate();
  const int k = detail::check_training_input(X, y, n_classes);
  const auto n_features = static_cast<int>(X.cols());
  if (auto pure = detail::single_class(y)) {
    return detail::constant_model(Family::svm, spec, n_features, k, *pure);
  }

  const auto& hp = spec.params.svm;
  const auto n = static_cast<double>(y.size());
  DenseMatrix W = DenseMatrix::Zero(k, n_features);
  DenseVector b = DenseVector::Zero(k);
  DenseMatrix acc(k, n_features);
  DenseVector bacc(k);

  for (int t = 1; t <= hp.iters; ++t) {
    const double eta = 1.0 / (hp.lambda * static_cast<double>(t));
    const DenseMatrix margins = (X * W.transpose()).eval().rowwise() + b.transpose();
    acc.setZero();
    bacc.setZero();
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      for (int c = 0; c < k; ++c) {
        const double s = (y[static_cast<std::size_t>(i)] == c) ? 1.0 : -1.0;
        if (s * margins(i, c) < 1.0) {
          for (FeatureMatrix::InnerIterator it(X, i); it; ++it) {
            acc(c, it.col()) += s * it.value();
          }
          bacc[c] += s;
        }
      }
    }
    const double shrink = 1.0 - eta * hp.lambda;  // == 1 - 1/t
    W = shrink * W + (eta / n) * acc;
    b += (eta / n) * bacc;
  }

  TrainedModel model;
  model.family = Family::svm;
  model.n_features = n_features;
  model.n_classes = k;
  model.spec = spec;
  model.params = LinearModel{std::move(W), std::move(b), false};
  return model;
}

}  // namespace textml
