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

#ifndef TEXTML_METRICS_HPP
#define TEXTML_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "textml/types.hpp"

namespace textml {

// K x K counts; cell (i, j) = samples of actual class i predicted as j.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int num_classes);

  int num_classes() const { return static_cast<int>(counts_.rows()); }
  std::int64_t at(int actual, int predicted) const;
  void add(int actual, int predicted, std::int64_t count = 1);
  std::int64_t total() const;
  std::int64_t row_sum(int actual) const;
  std::int64_t col_sum(int predicted) const;

  std::vector<std::string> class_names;  // optional; used by report emitters

 private:
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts_;
};

struct BinaryCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;  // true samples of the class
};

struct ClassificationReport {
  std::vector<std::string> class_names;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  std::int64_t total = 0;
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes);

// One-vs-rest counts for class c derived from the confusion matrix.
BinaryCounts class_counts(const ConfusionMatrix& cm, int c);

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R); every 0/0 resolves to 0.
ClassMetrics prf1(const BinaryCounts& counts);

// Support-weighted mean of per-class F1 with F1_i = 2tp_i / (2tp_i + fp_i + fn_i).
double weighted_f1(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);

ClassificationReport report(const ConfusionMatrix& cm);

// Full-precision CSV: one row per class, then accuracy and weighted-average rows.
std::string report_to_csv(const ClassificationReport& rep);

// Two-decimal Markdown table with Precision, Recall, F-1 columns plus
// Accuracy and Weighted Avg rows.
std::string report_to_markdown(const ClassificationReport& rep);

// Shared by the report writers: shortest round-trip decimal form of v.
std::string format_full(double v);

}  // namespace textml

#endif  // TEXTML_METRICS_HPP
