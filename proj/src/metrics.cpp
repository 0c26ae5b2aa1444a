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

#include "textml/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace textml {

ConfusionMatrix::ConfusionMatrix(int num_classes) {
  if (num_classes < 1) throw std::invalid_argument("ConfusionMatrix: need at least 1 class");
  counts_.setZero(num_classes, num_classes);
}

std::int64_t ConfusionMatrix::at(int actual, int predicted) const {
  return counts_(actual, predicted);
}

void ConfusionMatrix::add(int actual, int predicted, std::int64_t count) {
  if (actual < 0 || actual >= num_classes() || predicted < 0 || predicted >= num_classes()) {
    throw std::invalid_argument("ConfusionMatrix::add: label out of range");
  }
  counts_(actual, predicted) += count;
}

std::int64_t ConfusionMatrix::total() const { return counts_.sum(); }

std::int64_t ConfusionMatrix::row_sum(int actual) const { return counts_.row(actual).sum(); }

std::int64_t ConfusionMatrix::col_sum(int predicted) const {
  return counts_.col(predicted).sum();
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("confusion: y_true and y_pred lengths differ");
  }
  ConfusionMatrix cm(num_classes);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    cm.add(y_true[i], y_pred[i]);
  }
  return cm;
}

BinaryCounts class_counts(const ConfusionMatrix& cm, int c) {
  if (c < 0 || c >= cm.num_classes()) {
    throw std::invalid_argument("class_counts: class index out of range");
  }
  BinaryCounts b;
  b.tp = cm.at(c, c);
  b.fp = cm.col_sum(c) - b.tp;
  b.fn = cm.row_sum(c) - b.tp;
  b.tn = cm.total() - b.tp - b.fp - b.fn;
  return b;
}

ClassMetrics prf1(const BinaryCounts& counts) {
  ClassMetrics m;
  m.support = counts.tp + counts.fn;
  const auto pd = counts.tp + counts.fp;
  const auto rd = counts.tp + counts.fn;
  m.precision = pd > 0 ? static_cast<double>(counts.tp) / static_cast<double>(pd) : 0.0;
  m.recall = rd > 0 ? static_cast<double>(counts.tp) / static_cast<double>(rd) : 0.0;
  const double pr = m.precision + m.recall;
  m.f1 = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  return m;
}

double weighted_f1(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("weighted_f1: empty confusion matrix");
  double num = 0.0;
  double den = 0.0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    const BinaryCounts b = class_counts(cm, c);
    const double support = static_cast<double>(b.tp + b.fn);
    const double d = static_cast<double>(2 * b.tp + b.fp + b.fn);
    const double f1 = d > 0.0 ? 2.0 * static_cast<double>(b.tp) / d : 0.0;
    num += support * f1;
    den += support;
  }
  return num / den;
}

double accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  std::int64_t trace = 0;
  for (int c = 0; c < cm.num_classes(); ++c) trace += cm.at(c, c);
  return static_cast<double>(trace) / static_cast<double>(cm.total());
}

ClassificationReport report(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("report: empty confusion matrix");
  ClassificationReport rep;
  rep.total = cm.total();
  rep.class_names = cm.class_names;
  if (rep.class_names.empty()) {
    for (int c = 0; c < cm.num_classes(); ++c) {
      rep.class_names.push_back("class_" + std::to_string(c));
    }
  }
  double wp = 0.0, wr = 0.0, wf = 0.0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    const ClassMetrics m = prf1(class_counts(cm, c));
    rep.per_class.push_back(m);
    const auto support = static_cast<double>(m.support);
    wp += support * m.precision;
    wr += support * m.recall;
    wf += support * m.f1;
  }
  const auto total = static_cast<double>(rep.total);
  rep.weighted_precision = wp / total;
  rep.weighted_recall = wr / total;
  rep.weighted_f1 = wf / total;
  rep.accuracy = accuracy(cm);
  return rep;
}

std::string format_full(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

namespace {

std::string format_2f(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string report_to_csv(const ClassificationReport& rep) {
  std::ostringstream out;
  out << "class,precision,recall,f1,support\n";
  for (std::size_t c = 0; c < rep.per_class.size(); ++c) {
    const auto& m = rep.per_class[c];
    out << csv_escape(rep.class_names[c]) << ',' << format_full(m.precision) << ','
        << format_full(m.recall) << ',' << format_full(m.f1) << ',' << m.support << '\n';
  }
  out << "accuracy,,," << format_full(rep.accuracy) << ',' << rep.total << '\n';
  out << "weighted avg," << format_full(rep.weighted_precision) << ','
      << format_full(rep.weighted_recall) << ',' << format_full(rep.weighted_f1) << ','
      << rep.total << '\n';
  return out.str();
}

std::string report_to_markdown(const ClassificationReport& rep) {
  std::ostringstream out;
  out << "| Class | Precision | Recall | F-1 | Support |\n";
  out << "|---|---|---|---|---|\n";
  for (std::size_t c = 0; c < rep.per_class.size(); ++c) {
    const auto& m = rep.per_class[c];
    out << "| " << rep.class_names[c] << " | " << format_2f(m.precision) << " | "
        << format_2f(m.recall) << " | " << format_2f(m.f1) << " | " << m.support << " |\n";
  }
  out << "| Accuracy |  |  | " << format_2f(rep.accuracy) << " | " << rep.total << " |\n";
  out << "| Weighted Avg | " << format_2f(rep.weighted_precision) << " | "
      << format_2f(rep.weighted_recall) << " | " << format_2f(rep.weighted_f1) << " | "
      << rep.total << " |\n";
  return out.str();
}

}  // namespace textml
