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

#include "textml/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace textml {

namespace {

// Seed streams; every stage derives its randomness from the master seed so
// reports are a pure function of (corpus bytes, config, master seed).
constexpr std::uint64_t kSplitStream = 0x51;
constexpr std::uint64_t kOversampleStream = 0x52;
constexpr std::uint64_t kPhaseOneFitStream = 0x53;

std::string display_name(Family f) {
  switch (f) {
    case Family::decision_tree: return "Decision tree";
    case Family::naive_bayes: return "Naive Bayes";
    case Family::knn: return "k-NN";
    case Family::logistic_regression: return "Logistic regression";
    case Family::adaboost: return "AdaBoost";
    case Family::sgd: return "SGD";
    case Family::svm: return "SVM";
    case Family::ensemble: return "Ensemble";
  }
  return "?";
}

std::string format_2f(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::vector<int> doc_indices_by_id(const LabeledCorpus& corpus,
                                   const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> pos;
  pos.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    pos.emplace(corpus.documents[i].id, static_cast<int>(i));
  }
  std::vector<int> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(pos.at(id));
  return out;
}

}  // namespace

std::vector<AlgorithmSpec> default_roster(const Hyperparams& hp) {
  std::vector<AlgorithmSpec> roster;
  for (Family f : base_families()) {
    AlgorithmSpec spec;
    spec.family = f;
    spec.params = hp;
    roster.push_back(spec);
  }
  return roster;
}

Pipeline prepare_pipeline(const ExperimentConfig& config) {
  std::vector<std::string> warnings;
  const LabeledCorpus raw = load_corpus_any(config.corpus_path, &warnings);
  Pipeline p = prepare_pipeline(config, raw);
  p.warnings.insert(p.warnings.begin(), warnings.begin(), warnings.end());
  return p;
}

Pipeline prepare_pipeline(const ExperimentConfig& config, const LabeledCorpus& raw_corpus) {
  Pipeline p;
  p.corpus = deduplicate(raw_corpus);
  if (p.corpus.size() == 0) throw DataError("corpus is empty after deduplication");

  const EncodedDataset dataset = encode(p.corpus);
  SplitSpec split_spec = config.split;
  split_spec.seed = mix_seed(config.master_seed, kSplitStream);
  SplitResult parts = split(dataset, split_spec);
  p.train = std::move(parts.train);
  p.test = std::move(parts.test);
  p.warnings = std::move(parts.warnings);

  StopwordSet stops = StopwordSet::bundled_english();
  if (!config.stopword_file.empty()) stops.load_domain_file(config.stopword_file);

  const std::vector<int> train_rows = doc_indices_by_id(p.corpus, p.train.doc_ids);
  const std::vector<int> test_rows = doc_indices_by_id(p.corpus, p.test.doc_ids);
  p.train_docs.reserve(train_rows.size());
  for (int r : train_rows) {
    p.train_docs.push_back(preprocess(p.corpus.documents[static_cast<std::size_t>(r)], stops));
  }
  p.test_docs.reserve(test_rows.size());
  for (int r : test_rows) {
    p.test_docs.push_back(preprocess(p.corpus.documents[static_cast<std::size_t>(r)], stops));
  }

  // Vocabulary statistics come from the training split only; the test split
  // is transformed with the frozen vocabulary.
  for (const auto& d : p.train_docs) p.audit.vocab_fit_doc_ids.push_back(d.doc_id);
  p.vocabulary = fit_vocabulary(p.train_docs, config.vocab);
  p.X_train = transform_all(p.train_docs, p.vocabulary);
  p.X_test = transform_all(p.test_docs, p.vocabulary);
  return p;
}

PhaseOneReport run_phase_one(Pipeline& pipeline, const ExperimentConfig& config) {
  const int k = pipeline.num_classes();
  std::vector<AlgorithmSpec> roster = config.roster.empty()
                                          ? default_roster(config.hyperparams)
                                          : std::vector<AlgorithmSpec>{};
  if (!config.roster.empty()) {
    for (Family f : config.roster) {
      AlgorithmSpec spec;
      spec.family = f;
      spec.params = config.hyperparams;
      roster.push_back(spec);
    }
  }

  ResampleSpec resample = config.resample;
  resample.seed = mix_seed(config.master_seed, kOversampleStream);
  for (const auto& id : pipeline.train.doc_ids) {
    pipeline.audit.oversample_doc_ids.push_back(id);
  }
  const ResampleResult balanced = oversample(pipeline.X_train, pipeline.train.y, resample);

  PhaseOneReport report;
  std::vector<TrainedModel> models;
  std::vector<ClassificationReport> reports;
  for (std::size_t a = 0; a < roster.size(); ++a) {
    AlgorithmSpec spec = roster[a];
    spec.seed = mix_seed(config.master_seed, kPhaseOneFitStream, static_cast<std::uint64_t>(a));
    TrainedModel model = train(balanced.X, balanced.y, spec, k);
    const std::vector<int> y_hat = predict_all(model, pipeline.X_test);
    ConfusionMatrix cm = confusion(pipeline.test.y, y_hat, k);
    cm.class_names = pipeline.train.label_map.names();
    const ClassificationReport rep = textml::report(cm);

    PhaseOneRow row;
    row.family = spec.family;
    row.name = family_name(spec.family);
    row.accuracy = rep.accuracy;
    row.precision = rep.weighted_precision;
    row.recall = rep.weighted_recall;
    row.f1 = rep.weighted_f1;
    report.rows.push_back(row);
    models.push_back(std::move(model));
    reports.push_back(rep);
  }

  // Best base row drives the per-class report and the ensemble ranking.
  std::size_t best = 0;
  std::size_t second = 1;
  for (std::size_t a = 1; a < report.rows.size(); ++a) {
    if (report.rows[a].f1 > report.rows[best].f1) {
      second = best;
      best = a;
    } else if (a != best && (second == best || report.rows[a].f1 > report.rows[second].f1)) {
      second = a;
    }
  }
  report.best_name = report.rows[best].name;
  report.best_f1 = report.rows[best].f1;
  report.best_per_class = reports[best];

  if (roster.size() >= 2) {
    AlgorithmSpec spec;
    spec.family = Family::ensemble;
    spec.params = config.hyperparams;
    spec.params.ensemble.base_a = roster[best].family;
    spec.params.ensemble.base_b = roster[second].family;
    spec.params.ensemble.rank = 0;
    spec.seed = mix_seed(config.master_seed, kPhaseOneFitStream, 0xE0);
    TrainedModel ensemble = make_ensemble(models[best], models[second], 0, spec);

    const std::vector<int> y_hat = predict_all(ensemble, pipeline.X_test);
    ConfusionMatrix cm = confusion(pipeline.test.y, y_hat, k);
    cm.class_names = pipeline.train.label_map.names();
    const ClassificationReport rep = textml::report(cm);
    PhaseOneRow row;
    row.family = Family::ensemble;
    row.name = family_name(Family::ensemble);
    row.accuracy = rep.accuracy;
    row.precision = rep.weighted_precision;
    row.recall = rep.weighted_recall;
    row.f1 = rep.weighted_f1;
    report.rows.push_back(row);
  }
  return report;
}

PhaseTwoOutcome run_phase_two(Pipeline& pipeline, const ExperimentConfig& config) {
  const int k = pipeline.num_classes();

  std::vector<AlgorithmSpec> roster;
  {
    const std::vector<Family> families =
        config.roster.empty() ? base_families() : config.roster;
    for (Family f : families) {
      AlgorithmSpec spec;
      spec.family = f;
      spec.params = config.hyperparams;
      roster.push_back(spec);
    }
    if (families.size() >= 2) {  // Table-3-style ensemble entry
      AlgorithmSpec spec;
      spec.family = Family::ensemble;
      spec.params = config.hyperparams;
      roster.push_back(spec);
    }
  }

  SelectionSpec selection;
  selection.mode = config.selection;
  selection.folds = config.cv_folds;
  std::vector<int> test_y = pipeline.test.y;
  if (selection.mode == SelectionSpec::Mode::Heldout) {
    selection.heldout_X = &pipeline.X_test;
    selection.heldout_y = &test_y;
  }

  ResampleSpec resample = config.resample;
  for (const auto& id : pipeline.train.doc_ids) {
    pipeline.audit.oversample_doc_ids.push_back(id);
    pipeline.audit.selection_doc_ids.push_back(id);
  }
  if (selection.mode == SelectionSpec::Mode::Heldout) {
    for (const auto& id : pipeline.test.doc_ids) {
      pipeline.audit.selection_doc_ids.push_back(id);
    }
  }

  PhaseTwoOutcome outcome;
  PhaseTwoReport& report = outcome.report;
  report.class_names = pipeline.train.label_map.names();
  for (const auto& spec : roster) report.algorithm_names.push_back(family_name(spec.family));
  report.grid.assign(roster.size(), std::vector<PhaseTwoCell>(static_cast<std::size_t>(k)));
  report.winner_per_class.assign(static_cast<std::size_t>(k), 0);

  std::vector<PerClassResult> results;
  for (int c = 0; c < k; ++c) {
    PerClassResult result = train_class_roster(c, roster, pipeline.X_train, pipeline.train.y,
                                               k, selection, resample, config.master_seed);

    const std::vector<int> y_test_bin = binarize(pipeline.test.y, c, k);
    for (std::size_t a = 0; a < result.per_algorithm.size(); ++a) {
      const AlgoResult& ar = result.per_algorithm[a];
      std::vector<int> y_hat;
      y_hat.reserve(y_test_bin.size());
      for (Eigen::Index i = 0; i < pipeline.X_test.rows(); ++i) {
        y_hat.push_back(predict(*ar.model, row_of(pipeline.X_test, i)));
      }
      const ConfusionMatrix cm = confusion(y_test_bin, y_hat, 2);
      const ClassMetrics m = prf1(class_counts(cm, 1));
      PhaseTwoCell& cell = report.grid[a][static_cast<std::size_t>(c)];
      cell.accuracy = accuracy(cm);
      cell.precision = m.precision;
      cell.recall = m.recall;
      cell.f1 = m.f1;
      cell.selection_f1 = ar.selection_f1;
    }
    report.winner_per_class[static_cast<std::size_t>(c)] = result.winner;
    report.grid[static_cast<std::size_t>(result.winner)][static_cast<std::size_t>(c)].winner =
        true;
    results.push_back(std::move(result));
  }

  outcome.combined =
      build_combined(results, config.theta, pipeline.train.label_map.names());

  std::vector<int> y_hat;
  y_hat.reserve(pipeline.test.size());
  for (Eigen::Index i = 0; i < pipeline.X_test.rows(); ++i) {
    y_hat.push_back(predict_single(outcome.combined, row_of(pipeline.X_test, i)).first);
  }
  ConfusionMatrix cm = confusion(pipeline.test.y, y_hat, k);
  cm.class_names = pipeline.train.label_map.names();
  report.combined_report = textml::report(cm);
  report.combined_weighted_f1 = report.combined_report.weighted_f1;
  return outcome;
}

std::vector<std::pair<std::string, double>> term_profile(const FeatureMatrix& X,
                                                         const std::vector<int>& y,
                                                         const Vocabulary& vocab,
                                                         int class_index, int top_n) {
  if (top_n < 1) throw std::invalid_argument("term_profile: top_n must be >= 1");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw std::invalid_argument("term_profile: X rows and y length differ");
  }
  bool present = false;
  DenseVector sums = DenseVector::Zero(vocab.size());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (y[static_cast<std::size_t>(i)] != class_index) continue;
    present = true;
    for (FeatureMatrix::InnerIterator it(X, i); it; ++it) {
      sums[it.col()] += it.value();
    }
  }
  if (!present) {
    throw DataError("term_profile: class index " + std::to_string(class_index) +
                    " has no documents");
  }

  std::vector<int> order(static_cast<std::size_t>(vocab.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (sums[a] != sums[b]) return sums[a] > sums[b];
    return vocab.terms()[static_cast<std::size_t>(a)] < vocab.terms()[static_cast<std::size_t>(b)];
  });
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(top_n), order.size());
  std::vector<std::pair<std::string, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(vocab.terms()[static_cast<std::size_t>(order[i])], sums[order[i]]);
  }
  return out;
}

// ---- rendering ----

std::string phase_one_to_csv(const PhaseOneReport& report) {
  std::ostringstream out;
  out << "algorithm,accuracy,precision,recall,f1\n";
  for (const auto& row : report.rows) {
    out << row.name << ',' << format_full(row.accuracy) << ',' << format_full(row.precision)
        << ',' << format_full(row.recall) << ',' << format_full(row.f1) << '\n';
  }
  return out.str();
}

std::string phase_one_to_markdown(const PhaseOneReport& report) {
  std::ostringstream out;
  out << "| ML Algorithm | Accuracy | Precision | Recall | F-1 |\n";
  out << "|---|---|---|---|---|\n";
  double best = 0.0;
  for (const auto& row : report.rows) best = std::max(best, row.f1);
  for (const auto& row : report.rows) {
    const std::string f1 = format_2f(row.f1);
    out << "| " << display_name(row.family) << " | " << format_2f(row.accuracy) << " | "
        << format_2f(row.precision) << " | " << format_2f(row.recall) << " | "
        << (row.f1 == best ? "**" + f1 + "**" : f1) << " |\n";
  }
  return out.str();
}

std::string phase_two_to_csv(const PhaseTwoReport& report) {
  std::ostringstream out;
  out << "algorithm,class,accuracy,precision,recall,f1,selection_f1,winner\n";
  for (std::size_t a = 0; a < report.grid.size(); ++a) {
    for (std::size_t c = 0; c < report.grid[a].size(); ++c) {
      const PhaseTwoCell& cell = report.grid[a][c];
      out << report.algorithm_names[a] << ',' << report.class_names[c] << ','
          << format_full(cell.accuracy) << ',' << format_full(cell.precision) << ','
          << format_full(cell.recall) << ',' << format_full(cell.f1) << ','
          << format_full(cell.selection_f1) << ',' << (cell.winner ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string phase_two_to_markdown(const PhaseTwoReport& report) {
  std::ostringstream out;
  out << "| ML Algorithm | Measure |";
  for (const auto& name : report.class_names) out << ' ' << name << " |";
  out << '\n';
  out << "|---|---|";
  for (std::size_t c = 0; c < report.class_names.size(); ++c) out << "---|";
  out << '\n';

  const char* measures[4] = {"Accuracy", "Precision", "Recall", "F-1"};
  for (std::size_t a = 0; a < report.grid.size(); ++a) {
    const auto fam = family_from_name(report.algorithm_names[a]);
    for (int m = 0; m < 4; ++m) {
      out << "| " << (m == 0 ? (fam ? display_name(*fam) : report.algorithm_names[a]) : "")
          << " | " << measures[m] << " |";
      for (std::size_t c = 0; c < report.grid[a].size(); ++c) {
        const PhaseTwoCell& cell = report.grid[a][c];
        double v = 0.0;
        switch (m) {
          case 0: v = cell.accuracy; break;
          case 1: v = cell.precision; break;
          case 2: v = cell.recall; break;
          case 3: v = cell.f1; break;
        }
        std::string s = format_2f(v);
        if (m == 3 && cell.winner) s = "**" + s + "**";  // per-class selected model
        out << ' ' << s << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report: " + path.string());
  out << content;
  written.push_back(path.string());
}

}  // namespace

CompareSummary run_compare(const ExperimentConfig& config) {
  if (config.output_dir.empty()) throw UsageError("compare: output directory required");
  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path outdir(config.output_dir);

  Pipeline pipeline = prepare_pipeline(config);
  CompareSummary summary;

  const bool phase_one = config.phase != ExperimentConfig::Phase::Two;
  const bool phase_two = config.phase != ExperimentConfig::Phase::One;

  if (phase_one) {
    summary.phase_one = run_phase_one(pipeline, config);
    write_file(outdir / "phase1_report.csv", phase_one_to_csv(*summary.phase_one),
               summary.files_written);
    write_file(outdir / "phase1_report.md", phase_one_to_markdown(*summary.phase_one),
               summary.files_written);
    write_file(outdir / "phase1_best_per_class.csv",
               report_to_csv(summary.phase_one->best_per_class), summary.files_written);
    write_file(outdir / "phase1_best_per_class.md",
               report_to_markdown(summary.phase_one->best_per_class), summary.files_written);
  }
  if (phase_two) {
    PhaseTwoOutcome outcome = run_phase_two(pipeline, config);
    summary.phase_two = outcome.report;
    write_file(outdir / "phase2_grid.csv", phase_two_to_csv(outcome.report),
               summary.files_written);
    write_file(outdir / "phase2_grid.md", phase_two_to_markdown(outcome.report),
               summary.files_written);
    write_file(outdir / "combined_report.csv", report_to_csv(outcome.report.combined_report),
               summary.files_written);
    write_file(outdir / "combined_report.md",
               report_to_markdown(outcome.report.combined_report), summary.files_written);
  }
  if (phase_one && phase_two) {
    std::ostringstream cmp;
    cmp << "metric,value\n";
    cmp << "phase_one_best_algorithm," << summary.phase_one->best_name << '\n';
    cmp << "phase_one_best_weighted_f1," << format_full(summary.phase_one->best_f1) << '\n';
    cmp << "combined_single_label_weighted_f1,"
        << format_full(summary.phase_two->combined_weighted_f1) << '\n';
    cmp << "delta,"
        << format_full(summary.phase_two->combined_weighted_f1 - summary.phase_one->best_f1)
        << '\n';
    write_file(outdir / "comparison.csv", cmp.str(), summary.files_written);
  }

  // Class term profiles over the training split (test rows stay untouched).
  {
    std::ostringstream prof;
    prof << "class,rank,term,weight\n";
    for (int c = 0; c < pipeline.num_classes(); ++c) {
      const auto profile = term_profile(pipeline.X_train, pipeline.train.y,
                                        pipeline.vocabulary, c, config.profile_top);
      for (std::size_t i = 0; i < profile.size(); ++i) {
        prof << pipeline.train.label_map.decode(c) << ',' << (i + 1) << ','
             << profile[i].first << ',' << format_full(profile[i].second) << '\n';
      }
    }
    write_file(outdir / "term_profiles.csv", prof.str(), summary.files_written);
  }
  return summary;
}

}  // namespace textml
