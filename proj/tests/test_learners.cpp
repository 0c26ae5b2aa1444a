#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "textml/learners.hpp"

using namespace textml;

namespace {

FeatureMatrix rows_matrix(const std::vector<std::vector<double>>& rows) {
  const auto cols = rows.empty() ? 0 : rows[0].size();
  FeatureMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0.0) {
        triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
      }
    }
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

SparseVector vec(const std::vector<double>& values) {
  SparseVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) v.insert(static_cast<Eigen::Index>(i)) = values[i];
  }
  return v;
}

AlgorithmSpec spec_of(Family family, std::uint64_t seed = 0) {
  AlgorithmSpec spec;
  spec.family = family;
  spec.seed = seed;
  return spec;
}

double training_accuracy(const TrainedModel& model, const FeatureMatrix& X,
                         const std::vector<int>& y) {
  const auto pred = predict_all(model, X);
  int correct = 0;
  for (std::size_t i = 0; i < y.size(); ++i) correct += pred[i] == y[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(y.size());
}

}  // namespace

// ---- decision tree ----

TEST_CASE("tree: pure training set collapses to a single leaf") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}, {1, 1}});
  const TrainedModel m = train_decision_tree(X, {0, 0, 0}, spec_of(Family::decision_tree));
  CHECK(predict(m, vec({5, 5})) == 0);
  CHECK(predict_proba(m, vec({0, 0}))[0] == 1.0);
}

TEST_CASE("tree: separable 1-D pair splits at the midpoint") {
  const FeatureMatrix X = rows_matrix({{0}, {1}});
  const TrainedModel m = train_decision_tree(X, {0, 1}, spec_of(Family::decision_tree));
  const auto& tree = std::get<TreeModel>(m.params);
  REQUIRE(tree.nodes.size() == 3);
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == doctest::Approx(0.5));
  CHECK(training_accuracy(m, X, {0, 1}) == 1.0);
}

TEST_CASE("tree: XOR needs exactly depth two") {
  // Hand enumeration: every root split leaves both children mixed (weighted
  // Gini 0.5 everywhere), so the first candidate (feature 0 at 0.5) is kept;
  // each child then separates on feature 1.
  const FeatureMatrix X = rows_matrix({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const std::vector<int> y = {0, 1, 1, 0};
  const TrainedModel m = train_decision_tree(X, y, spec_of(Family::decision_tree));
  const auto& tree = std::get<TreeModel>(m.params);
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == doctest::Approx(0.5));
  CHECK(tree.nodes[tree.nodes[0].left].feature == 1);
  CHECK(tree.nodes[tree.nodes[0].right].feature == 1);
  CHECK(training_accuracy(m, X, y) == 1.0);
}

TEST_CASE("tree: mixed leaves carry the Laplace-corrected distribution") {
  // depth cap forces a single mixed leaf with counts {3, 1}
  AlgorithmSpec spec = spec_of(Family::decision_tree);
  spec.params.tree.max_depth = 1;
  const FeatureMatrix X = rows_matrix({{0}, {1}, {2}, {3}});
  TrainedModel m = train_decision_tree(X, {0, 0, 0, 1}, spec, 2);
  // max_depth=1 still allows the root split; force a leaf via min_samples_split
  spec.params.tree.min_samples_split = 5;
  m = train_decision_tree(X, {0, 0, 0, 1}, spec, 2);
  const DenseVector p = predict_proba(m, vec({0}));
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tree: all-identical rows with mixed labels become a counted leaf") {
  const FeatureMatrix X = rows_matrix({{1, 2}, {1, 2}, {1, 2}});
  const TrainedModel m = train_decision_tree(X, {0, 1, 0}, spec_of(Family::decision_tree), 2);
  const auto& tree = std::get<TreeModel>(m.params);
  CHECK(tree.nodes.size() == 1);
  CHECK(predict(m, vec({1, 2})) == 0);
}

TEST_CASE("tree: positive input scaling leaves predictions unchanged") {
  Rng rng(404);
  const FeatureMatrix X = oracles::random_sparse(rng, 40, 8, 0.5);
  const std::vector<int> y = oracles::random_labels(rng, 40, 3);
  const TrainedModel base = train_decision_tree(X, y, spec_of(Family::decision_tree), 3);
  for (const double c : {0.25, 4.0}) {  // powers of two scale exactly
    FeatureMatrix scaled = X;
    scaled *= c;
    const TrainedModel m = train_decision_tree(scaled, y, spec_of(Family::decision_tree), 3);
    CHECK(predict_all(m, scaled) == predict_all(base, X));
  }
}

// ---- naive bayes ----

TEST_CASE("nb: degenerate prior predicts the single class with probability 1") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 2}});
  const TrainedModel m = train_naive_bayes(X, {0, 0}, spec_of(Family::naive_bayes), 2);
  const DenseVector p = predict_proba(m, vec({3, 3}));
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
}

TEST_CASE("nb: two disjoint one-term classes follow the hand-computed posterior") {
  // alpha=1, V=2: P(class 0 | term 0) = (1/3) / (1/3 + 1/6) = 2/3
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_naive_bayes(X, {0, 1}, spec_of(Family::naive_bayes));
  const DenseVector p = predict_proba(m, vec({1, 0}));
  CHECK(predict(m, vec({1, 0})) == 0);
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("nb: symmetric classes give the uniform posterior") {
  const FeatureMatrix X = rows_matrix({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
  const TrainedModel m = train_naive_bayes(X, {0, 1, 0, 1}, spec_of(Family::naive_bayes));
  const DenseVector p = predict_proba(m, vec({2, 2}));
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("nb: negative features are rejected") {
  const FeatureMatrix X = rows_matrix({{1, -1}, {0, 1}});
  CHECK_THROWS_AS(train_naive_bayes(X, {0, 1}, spec_of(Family::naive_bayes)),
                  std::invalid_argument);
}

// ---- knn ----

TEST_CASE("knn: a single training row answers every query") {
  const FeatureMatrix X = rows_matrix({{0.6, 0.8}});
  const TrainedModel m = train_knn(X, {0}, spec_of(Family::knn), 2);
  CHECK(predict(m, vec({0, 1})) == 0);
  CHECK(predict_proba(m, vec({1, 0}))[0] == 1.0);
}

TEST_CASE("knn: k=1 self-match returns the row's label") {
  AlgorithmSpec spec = spec_of(Family::knn);
  spec.params.knn.k = 1;
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_knn(X, {0, 1}, spec);
  CHECK(predict(m, vec({0, 1})) == 1);
  CHECK(predict(m, vec({1, 0})) == 0);
}

TEST_CASE("knn: vote fractions form the probability vector") {
  AlgorithmSpec spec = spec_of(Family::knn);
  spec.params.knn.k = 3;
  const FeatureMatrix X = rows_matrix({{1, 0}, {0.9, 0.1}, {0, 1}, {-1, 0}});
  const TrainedModel m = train_knn(X, {0, 0, 1, 1}, spec);
  const DenseVector p = predict_proba(m, vec({1, 0}));
  CHECK(predict(m, vec({1, 0})) == 0);
  CHECK(p[0] == doctest::Approx(2.0 / 3.0));
  CHECK(p[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("knn: k at least the row count reduces to the global majority vote") {
  AlgorithmSpec spec = spec_of(Family::knn);
  spec.params.knn.k = 50;
  const FeatureMatrix X = rows_matrix({{1, 0}, {0.5, 0.5}, {0, 1}, {0.2, 0.8}, {0.9, 0.1}});
  const std::vector<int> y = {0, 0, 1, 1, 0};
  const TrainedModel m = train_knn(X, y, spec);
  const DenseVector p = predict_proba(m, vec({0.3, 0.7}));
  CHECK(p[0] == doctest::Approx(3.0 / 5.0));
  CHECK(p[1] == doctest::Approx(2.0 / 5.0));
  CHECK(predict(m, vec({0, 1})) == 0);  // majority regardless of the query
}

// ---- logistic regression ----

TEST_CASE("logreg: separable pair reaches full accuracy with finite weights") {
  const FeatureMatrix X = rows_matrix({{0}, {1}});
  const TrainedModel m = train_logistic(X, {0, 1}, spec_of(Family::logistic_regression));
  CHECK(training_accuracy(m, X, {0, 1}) == 1.0);
  const auto& lin = std::get<LinearModel>(m.params);
  CHECK(std::isfinite(lin.weights(0, 0)));
  CHECK(std::isfinite(lin.bias[0]));
}

TEST_CASE("logreg: zero initialization yields the uniform distribution") {
  AlgorithmSpec spec = spec_of(Family::logistic_regression);
  spec.params.logistic.max_iters = 0;
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_logistic(X, {0, 1}, spec);
  CHECK(!m.warnings.empty());  // never converged
  const DenseVector p = predict_proba(m, vec({0.3, 0.9}));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  // K = 4 multinomial specialization of the same statement
  const FeatureMatrix X4 = rows_matrix({{1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
  const TrainedModel m4 = train_logistic(X4, {0, 1, 2, 3}, spec);
  const DenseVector p4 = predict_proba(m4, vec({0.7, 0.1}));
  for (int c = 0; c < 4; ++c) CHECK(p4[c] == doctest::Approx(0.25));
}

TEST_CASE("logreg: analytic gradient matches central finite differences") {
  // Vector relative error ||ga - gf|| / (||ga|| + ||gf||) at 20 random
  // parameter points, h = 1e-6; half binary, half multinomial.
  Rng rng(606);
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    const bool binary = point < 10;
    const int k = binary ? 2 : 3;
    const int n = 12;
    const int v = 6;
    const FeatureMatrix X = oracles::random_sparse(rng, n, v, 0.6, false);
    const std::vector<int> y = oracles::random_labels(rng, n, k);
    const double lambda = 1e-3;

    DenseMatrix W(binary ? 1 : k, v);
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
      for (Eigen::Index j = 0; j < W.cols(); ++j) W(i, j) = rng.uniform01() - 0.5;
    }
    DenseVector b(binary ? 1 : k);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.uniform01() - 0.5;

    DenseMatrix gW;
    DenseVector gb;
    logistic_gradient(X, y, W, b, lambda, binary, gW, gb);

    auto loss = [&]() { return logistic_loss(X, y, W, b, lambda, binary); };
    double diff_sq = 0.0, analytic_sq = 0.0, fd_sq = 0.0;
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
      for (Eigen::Index j = 0; j < W.cols(); ++j) {
        const double fd = oracles::central_difference(loss, W(i, j), 1e-6);
        diff_sq += (gW(i, j) - fd) * (gW(i, j) - fd);
        analytic_sq += gW(i, j) * gW(i, j);
        fd_sq += fd * fd;
      }
    }
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double fd = oracles::central_difference(loss, b[i], 1e-6);
      diff_sq += (gb[i] - fd) * (gb[i] - fd);
      analytic_sq += gb[i] * gb[i];
      fd_sq += fd * fd;
    }
    const double rel =
        std::sqrt(diff_sq) / std::max(1e-12, std::sqrt(analytic_sq) + std::sqrt(fd_sq));
    worst = std::max(worst, rel);
  }
  CHECK(worst < 1e-5);
}

// ---- adaboost ----

TEST_CASE("ada: one stump settles a separable pair") {
  const FeatureMatrix X = rows_matrix({{0}, {1}});
  const TrainedModel m = train_adaboost(X, {0, 1}, spec_of(Family::adaboost));
  CHECK(training_accuracy(m, X, {0, 1}) == 1.0);
  CHECK(std::get<AdaBoostModel>(m.params).stumps.size() == 1);
}

TEST_CASE("ada: pure labels give a constant model with probability 1") {
  const FeatureMatrix X = rows_matrix({{0}, {1}});
  const TrainedModel m = train_adaboost(X, {1, 1}, spec_of(Family::adaboost), 2);
  CHECK(predict_proba(m, vec({0.7}))[1] == 1.0);
}

TEST_CASE("ada: an interval class inside another resolves within five rounds") {
  const FeatureMatrix X = rows_matrix({{0}, {1}, {2}, {3}});
  const std::vector<int> y = {0, 1, 1, 0};
  AlgorithmSpec spec = spec_of(Family::adaboost);
  spec.params.ada.rounds = 5;
  const TrainedModel m = train_adaboost(X, y, spec);
  CHECK(training_accuracy(m, X, y) == 1.0);
  const auto& ada = std::get<AdaBoostModel>(m.params);
  CHECK(ada.stumps.size() <= 5);
  // alpha > 0 is equivalent to the accepted stump beating 1 - 1/K
  for (const Stump& s : ada.stumps) CHECK(s.alpha > 0.0);

  // the default round budget also ends at zero training error here
  const TrainedModel full = train_adaboost(X, y, spec_of(Family::adaboost));
  CHECK(training_accuracy(full, X, y) == 1.0);
}

TEST_CASE("ada: identical rows with mixed labels fall back to the majority class") {
  const FeatureMatrix X = rows_matrix({{1, 1}, {1, 1}, {1, 1}});
  const TrainedModel m = train_adaboost(X, {1, 0, 1}, spec_of(Family::adaboost), 2);
  CHECK(!m.warnings.empty());
  CHECK(predict(m, vec({1, 1})) == 1);
  CHECK(predict_proba(m, vec({0, 0}))[1] == 1.0);
}

// ---- sgd ----

TEST_CASE("sgd: separable pair trains to full accuracy") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_sgd(X, {0, 1}, spec_of(Family::sgd, 3));
  CHECK(training_accuracy(m, X, {0, 1}) == 1.0);
}

TEST_CASE("sgd: identical seeds give identical weight vectors") {
  Rng rng(808);
  const FeatureMatrix X = oracles::random_sparse(rng, 30, 10, 0.5, true, true);
  const std::vector<int> y = oracles::random_labels(rng, 30, 3);
  const TrainedModel a = train_sgd(X, y, spec_of(Family::sgd, 77), 3);
  const TrainedModel b = train_sgd(X, y, spec_of(Family::sgd, 77), 3);
  const auto& la = std::get<LinearModel>(a.params);
  const auto& lb = std::get<LinearModel>(b.params);
  CHECK(la.weights == lb.weights);
  CHECK(la.bias == lb.bias);
}

TEST_CASE("sgd: probabilities are the softmax of the margins") {
  TrainedModel m;
  m.family = Family::sgd;
  m.n_features = 1;
  m.n_classes = 2;
  m.params = LinearModel{rows_matrix({{2}, {0}}).toDense(), DenseVector::Zero(2), false};
  const DenseVector p = predict_proba(m, vec({1}));
  CHECK(p[0] == doctest::Approx(0.8807970779778824).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.11920292202211755).epsilon(1e-12));
}

// ---- svm ----

TEST_CASE("svm: separable pair gets correct margin signs") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_svm(X, {0, 1}, spec_of(Family::svm));
  CHECK(training_accuracy(m, X, {0, 1}) == 1.0);
  const auto& lin = std::get<LinearModel>(m.params);
  // class-0 margin positive on the class-0 point, negative on the other
  CHECK(lin.weights.row(0).dot(DenseVector(vec({1, 0}))) + lin.bias[0] > 0.0);
  CHECK(lin.weights.row(0).dot(DenseVector(vec({0, 1}))) + lin.bias[0] < 0.0);
}

TEST_CASE("svm: antipodal points leave the bias at zero") {
  const FeatureMatrix X = rows_matrix({{0.6, 0.8}, {-0.6, -0.8}});
  const TrainedModel m = train_svm(X, {1, 0}, spec_of(Family::svm));
  const auto& lin = std::get<LinearModel>(m.params);
  CHECK(std::abs(lin.bias[0]) < 1e-6);
  CHECK(std::abs(lin.bias[1]) < 1e-6);
}

TEST_CASE("svm: positive rescaling keeps the trained argmax on a toy set") {
  const FeatureMatrix X =
      rows_matrix({{1, 0}, {0.9, 0.1}, {0.8, 0.0}, {0, 1}, {0.1, 0.9}, {0.0, 0.8}});
  const std::vector<int> y = {0, 0, 0, 1, 1, 1};
  const TrainedModel base = train_svm(X, y, spec_of(Family::svm));
  for (const double c : {0.5, 3.0}) {
    FeatureMatrix scaled = X;
    scaled *= c;
    const TrainedModel m = train_svm(scaled, y, spec_of(Family::svm));
    CHECK(predict_all(m, scaled) == predict_all(base, X));
  }
}

// ---- ensemble ----

TEST_CASE("ensemble: unanimity wins, disagreement goes to the higher rank") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const std::vector<int> y = {0, 1};
  // disagreeing constant bases
  TrainedModel a = train_decision_tree(X, {0, 0}, spec_of(Family::decision_tree), 2);
  TrainedModel b = train_decision_tree(X, {1, 1}, spec_of(Family::decision_tree), 2);
  AlgorithmSpec spec = spec_of(Family::ensemble);

  const TrainedModel e_first = make_ensemble(a, b, 0, spec);
  CHECK(predict(e_first, vec({1, 0})) == 0);
  const TrainedModel e_second = make_ensemble(a, b, 1, spec);
  CHECK(predict(e_second, vec({1, 0})) == 1);

  // one-hot probabilities average to one half each
  const DenseVector p = predict_proba(e_first, vec({1, 0}));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  // agreeing bases: unanimity regardless of rank
  TrainedModel c = train_decision_tree(X, {0, 0}, spec_of(Family::decision_tree), 2);
  const TrainedModel e_agree = make_ensemble(a, c, 1, spec);
  CHECK(predict(e_agree, vec({0, 1})) == 0);
}

TEST_CASE("ensemble: train_ensemble fits both bases on the data") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0.9, 0.1}, {0, 1}, {0.1, 0.9}});
  const std::vector<int> y = {0, 0, 1, 1};
  const TrainedModel e =
      train_ensemble(X, y, spec_of(Family::ensemble), spec_of(Family::logistic_regression),
                     spec_of(Family::naive_bayes), 0);
  CHECK(training_accuracy(e, X, y) == 1.0);
  CHECK_THROWS_AS(train_ensemble(X, y, spec_of(Family::ensemble), spec_of(Family::ensemble),
                                 spec_of(Family::naive_bayes), 0),
                  std::invalid_argument);
}

// ---- shared contracts ----

TEST_CASE("every family predicts a pure training class with probability 1") {
  const FeatureMatrix X = rows_matrix({{0.5, 0.1}, {0.4, 0.2}, {0.6, 0.3}});
  const std::vector<int> y = {0, 0, 0};
  const std::vector<Family> families = base_families();
  for (Family f : families) {
    const TrainedModel m = train(X, y, spec_of(f), 2);
    const DenseVector p = predict_proba(m, vec({0.2, 0.9}));
    CHECK(predict(m, vec({0.2, 0.9})) == 0);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
  }
}

TEST_CASE("every family is deterministic for a fixed seed") {
  Rng rng(911);
  const FeatureMatrix X = oracles::random_sparse(rng, 24, 8, 0.5, true, true);
  const std::vector<int> y = oracles::random_labels(rng, 24, 3);
  const FeatureMatrix Q = oracles::random_sparse(rng, 8, 8, 0.5, true, true);
  for (Family f : base_families()) {
    const TrainedModel a = train(X, y, spec_of(f, 1234), 3);
    const TrainedModel b = train(X, y, spec_of(f, 1234), 3);
    for (Eigen::Index i = 0; i < Q.rows(); ++i) {
      const DenseVector pa = predict_proba(a, row_of(Q, i));
      const DenseVector pb = predict_proba(b, row_of(Q, i));
      CHECK(pa == pb);
    }
  }
}

TEST_CASE("probability vectors are distributions for every family") {
  Rng rng(555);
  const FeatureMatrix X = oracles::random_sparse(rng, 30, 9, 0.4, true, true);
  const std::vector<int> y = oracles::random_labels(rng, 30, 4);
  const FeatureMatrix Q = oracles::random_sparse(rng, 12, 9, 0.4, true, true);
  std::vector<AlgorithmSpec> specs;
  for (Family f : base_families()) specs.push_back(spec_of(f, 7));
  specs.push_back(spec_of(Family::ensemble, 7));
  for (const auto& spec : specs) {
    const TrainedModel m = train(X, y, spec, 4);
    for (Eigen::Index i = 0; i < Q.rows(); ++i) {
      const DenseVector p = predict_proba(m, row_of(Q, i));
      REQUIRE(p.size() == 4);
      double sum = 0.0;
      for (int c = 0; c < 4; ++c) {
        CHECK(p[c] >= 0.0);
        CHECK(p[c] <= 1.0);
        sum += p[c];
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("predict takes the argmax with lowest-index tie-break") {
  TrainedModel m;
  m.family = Family::sgd;
  m.n_features = 1;
  m.n_classes = 2;
  m.params = LinearModel{rows_matrix({{-1}, {1}}).toDense(), DenseVector::Zero(2), false};
  CHECK(predict(m, vec({1})) == 1);  // proba ~ [0.12, 0.88]

  m.params = LinearModel{rows_matrix({{1}, {1}}).toDense(), DenseVector::Zero(2), false};
  CHECK(predict(m, vec({1})) == 0);  // exact tie
}

TEST_CASE("dimension mismatches are rejected at prediction time") {
  const FeatureMatrix X = rows_matrix({{1, 0}, {0, 1}});
  const TrainedModel m = train_naive_bayes(X, {0, 1}, spec_of(Family::naive_bayes));
  CHECK_THROWS_AS(predict(m, vec({1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(predict_proba(m, vec({1})), std::invalid_argument);
}

TEST_CASE("hyperparameter validation rejects out-of-range values") {
  AlgorithmSpec spec = spec_of(Family::knn);
  spec.params.knn.k = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = spec_of(Family::adaboost);
  spec.params.ada.rounds = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = spec_of(Family::logistic_regression);
  spec.params.logistic.eta = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = spec_of(Family::sgd);
  spec.params.sgd.lambda = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
