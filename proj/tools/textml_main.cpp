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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "textml/harness.hpp"
#include "textml/synthetic.hpp"

namespace {

using namespace textml;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct PipelineFlags {
  std::string stopwords;
  int min_df = 2;
  int max_features = 0;  // 0: unset
  double train_fraction = 0.70;
  bool no_stratify = false;
  std::string oversample = "max";
  std::uint64_t seed = 0;
  Hyperparams hp;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--stopwords", f.stopwords, "Domain stopword file (one term per line)");
  cmd->add_option("--min-df", f.min_df, "Minimum document frequency for vocabulary terms");
  cmd->add_option("--max-features", f.max_features, "Cap vocabulary size (0: unlimited)");
  cmd->add_option("--train-fraction", f.train_fraction, "Training split fraction");
  cmd->add_flag("--no-stratify", f.no_stratify, "Disable stratified splitting");
  cmd->add_option("--oversample", f.oversample,
                  "Training-set oversampling target: max, a fixed count, or off");

  cmd->add_option("--tree-max-depth", f.hp.tree.max_depth, "Decision tree depth limit");
  cmd->add_option("--tree-min-split", f.hp.tree.min_samples_split,
                  "Minimum node size eligible for splitting");
  cmd->add_option("--nb-alpha", f.hp.nb.alpha, "Naive Bayes Laplace smoothing");
  cmd->add_option("--knn-k", f.hp.knn.k, "Neighbor count");
  cmd->add_option("--logreg-eta", f.hp.logistic.eta, "Logistic regression learning rate");
  cmd->add_option("--logreg-lambda", f.hp.logistic.lambda, "Logistic regression L2 strength");
  cmd->add_option("--logreg-max-iters", f.hp.logistic.max_iters,
                  "Logistic regression iteration cap");
  cmd->add_option("--logreg-tol", f.hp.logistic.tol,
                  "Logistic regression gradient tolerance");
  cmd->add_option("--ada-rounds", f.hp.ada.rounds, "AdaBoost boosting rounds");
  cmd->add_option("--sgd-eta0", f.hp.sgd.eta0, "SGD initial learning rate");
  cmd->add_option("--sgd-lambda", f.hp.sgd.lambda, "SGD L2 strength");
  cmd->add_option("--sgd-epochs", f.hp.sgd.epochs, "SGD epochs");
  cmd->add_option("--svm-lambda", f.hp.svm.lambda, "SVM regularization");
  cmd->add_option("--svm-iters", f.hp.svm.iters, "SVM subgradient iterations");
}

ResampleSpec parse_oversample(const std::string& value) {
  ResampleSpec spec;
  if (value == "max") {
    spec.target = ResampleSpec::Target::MaxClassCount;
  } else if (value == "off") {
    spec.target = ResampleSpec::Target::Off;
  } else {
    try {
      spec.target = ResampleSpec::Target::Fixed;
      spec.fixed_target = std::stoi(value);
    } catch (const std::exception&) {
      throw UsageError("--oversample expects max, off, or a positive integer");
    }
    if (spec.fixed_target < 1) {
      throw UsageError("--oversample fixed target must be >= 1");
    }
  }
  return spec;
}

ExperimentConfig make_config(const std::string& input, const PipelineFlags& f) {
  ExperimentConfig config;
  config.corpus_path = input;
  config.stopword_file = f.stopwords;
  config.split.train_fraction = f.train_fraction;
  config.split.stratified = !f.no_stratify;
  config.resample = parse_oversample(f.oversample);
  config.vocab.min_df = f.min_df;
  if (f.max_features > 0) config.vocab.max_features = f.max_features;
  config.hyperparams = f.hp;
  config.master_seed = f.seed;
  return config;
}

// Maps a dataset's labels into the model's class space by name.
std::vector<int> encode_with(const std::vector<std::string>& class_names,
                             const EncodedDataset& data) {
  LabelMap map(class_names);
  std::vector<int> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out.push_back(map.encode(data.label_map.decode(data.y[i])));
  }
  return out;
}

int cmd_ingest(const std::string& input, const std::string& output, bool dedupe) {
  std::vector<std::string> warnings;
  LabeledCorpus corpus = load_jsonl(input, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const std::size_t before = corpus.size();
  if (dedupe) corpus = deduplicate(corpus);
  save_dataset(output, corpus, dedupe);
  std::cout << "ingested " << before << " records";
  if (dedupe) std::cout << " (" << corpus.size() << " after deduplication)";
  std::cout << " -> " << output << '\n';
  return kExitOk;
}

int cmd_train(const std::string& input, const std::string& mode, const std::string& algo,
              const PipelineFlags& flags, const std::string& output) {
  ExperimentConfig config = make_config(input, flags);
  Pipeline pipeline = prepare_pipeline(config);
  for (const auto& w : pipeline.warnings) std::cerr << "warning: " << w << '\n';
  config.split.seed = mix_seed(config.master_seed, 0x51);  // matches prepare_pipeline

  if (mode == "multiclass") {
    if (algo == "all") {
      throw UsageError("--mode multiclass expects a single --algo, not \"all\"");
    }
    const auto family = family_from_name(algo);
    if (!family) throw UsageError("unknown algorithm: " + algo);

    ResampleSpec resample = config.resample;
    resample.seed = mix_seed(config.master_seed, 0x52);
    const ResampleResult balanced = oversample(pipeline.X_train, pipeline.train.y, resample);
    AlgorithmSpec spec;
    spec.family = *family;
    spec.params = config.hyperparams;
    spec.seed = mix_seed(config.master_seed, 0x53, 0);
    const TrainedModel model = train(balanced.X, balanced.y, spec, pipeline.num_classes());
    for (const auto& w : model.warnings) std::cerr << "warning: " << w << '\n';

    ModelContainer container{model, pipeline.vocabulary, pipeline.train.label_map.names(),
                             config.split};
    save_model(output, container);
    std::cout << "trained " << family_name(*family) << " on " << balanced.y.size()
              << " rows -> " << output << '\n';
    return kExitOk;
  }
  if (mode != "ovr") throw UsageError("--mode must be multiclass or ovr");

  std::vector<Family> roster_families;
  if (algo == "all") {
    roster_families = base_families();
  } else {
    const auto family = family_from_name(algo);
    if (!family) throw UsageError("unknown algorithm: " + algo);
    roster_families.push_back(*family);
  }
  config.roster = roster_families;
  config.phase = ExperimentConfig::Phase::Two;
  PhaseTwoOutcome outcome = run_phase_two(pipeline, config);

  CombinedContainer container{outcome.combined, pipeline.vocabulary,
                              pipeline.train.label_map.names(), config.split};
  save_combined(output, container);
  std::cout << "trained one-vs-rest combined model over " << outcome.combined.classes.size()
            << " classes -> " << output << '\n';
  return kExitOk;
}

int cmd_evaluate(const std::string& model_path, const std::string& input,
                 const std::string& split_name, const std::string& report_path) {
  const AnyContainer container = load_container(model_path);
  const Vocabulary& vocab = std::holds_alternative<ModelContainer>(container)
                                ? std::get<ModelContainer>(container).vocabulary
                                : std::get<CombinedContainer>(container).vocabulary;
  const SplitSpec split_spec = std::holds_alternative<ModelContainer>(container)
                                   ? std::get<ModelContainer>(container).split
                                   : std::get<CombinedContainer>(container).split;
  const std::vector<std::string>& class_names =
      std::holds_alternative<ModelContainer>(container)
          ? std::get<ModelContainer>(container).class_names
          : std::get<CombinedContainer>(container).class_names;

  LabeledCorpus corpus = deduplicate(load_corpus_any(input));
  EncodedDataset dataset = encode(corpus);

  EncodedDataset subset;
  if (split_name == "all") {
    subset = dataset;
  } else if (split_name == "train" || split_name == "test") {
    SplitResult parts = split(dataset, split_spec);
    subset = split_name == "train" ? std::move(parts.train) : std::move(parts.test);
  } else {
    throw UsageError("--split must be train, test, or all");
  }

  StopwordSet stops = StopwordSet::bundled_english();
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : corpus.documents) by_id.emplace(d.id, &d);
  std::vector<TokenizedDoc> docs;
  docs.reserve(subset.size());
  for (const auto& id : subset.doc_ids) docs.push_back(preprocess(*by_id.at(id), stops));
  const FeatureMatrix X = transform_all(docs, vocab);
  const std::vector<int> y = encode_with(class_names, subset);

  std::vector<int> y_hat;
  y_hat.reserve(y.size());
  if (const auto* mc = std::get_if<ModelContainer>(&container)) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      y_hat.push_back(predict(mc->model, row_of(X, i)));
    }
  } else {
    const auto& cc = std::get<CombinedContainer>(container);
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      y_hat.push_back(predict_single(cc.model, row_of(X, i)).first);
    }
  }

  ConfusionMatrix cm = confusion(y, y_hat, static_cast<int>(class_names.size()));
  cm.class_names = class_names;
  const ClassificationReport rep = report(cm);
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw DataError("cannot write report: " + report_path);
  out << report_to_csv(rep);
  std::cout << report_to_markdown(rep);
  std::cerr << "report written to " << report_path << '\n';
  return kExitOk;
}

int cmd_compare(const std::string& input, const std::string& phase,
                const std::string& select_on, const PipelineFlags& flags,
                const std::string& outdir, int folds, double theta) {
  ExperimentConfig config = make_config(input, flags);
  config.output_dir = outdir;
  config.cv_folds = folds;
  config.theta = theta;
  if (phase == "one") {
    config.phase = ExperimentConfig::Phase::One;
  } else if (phase == "two") {
    config.phase = ExperimentConfig::Phase::Two;
  } else if (phase == "both") {
    config.phase = ExperimentConfig::Phase::Both;
  } else {
    throw UsageError("--phase must be one, two, or both");
  }
  if (select_on == "cv") {
    config.selection = SelectionSpec::Mode::CrossVal;
  } else if (select_on == "test") {
    config.selection = SelectionSpec::Mode::Heldout;
  } else {
    throw UsageError("--select-on must be cv or test");
  }

  const CompareSummary summary = run_compare(config);
  if (summary.phase_one) {
    std::cout << "phase one best: " << summary.phase_one->best_name << " (weighted F1 "
              << format_full(summary.phase_one->best_f1) << ")\n";
  }
  if (summary.phase_two) {
    std::cout << "combined OvR single-label weighted F1: "
              << format_full(summary.phase_two->combined_weighted_f1) << '\n';
  }
  for (const auto& f : summary.files_written) std::cout << "wrote " << f << '\n';
  return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& text_file, bool multilabel,
                double theta, bool theta_given) {
  const AnyContainer container = load_container(model_path);
  std::ifstream in(text_file, std::ios::binary);
  if (!in) throw DataError("cannot open text file: " + text_file);
  std::stringstream buffer;
  buffer << in.rdbuf();

  const Document doc{text_file, buffer.str()};
  const StopwordSet stops = StopwordSet::bundled_english();
  const TokenizedDoc tokens = preprocess(doc, stops);

  if (const auto* mc = std::get_if<ModelContainer>(&container)) {
    if (multilabel) {
      throw UsageError("--multilabel requires a combined one-vs-rest model");
    }
    const SparseVector x = transform(tokens, mc->vocabulary);
    const DenseVector proba = predict_proba(mc->model, x);
    const int c = predict(mc->model, x);
    std::cout << mc->class_names[static_cast<std::size_t>(c)] << '\t' << format_full(proba[c])
              << '\n';
    return kExitOk;
  }

  const auto& cc = std::get<CombinedContainer>(container);
  const SparseVector x = transform(tokens, cc.vocabulary);
  if (!multilabel) {
    const auto [c, score] = predict_single(cc.model, x);
    std::cout << cc.class_names[static_cast<std::size_t>(c)] << '\t' << format_full(score)
              << '\n';
    return kExitOk;
  }
  OvRCombinedModel model = cc.model;
  if (theta_given) {
    if (!(theta > 0.0 && theta < 1.0)) throw UsageError("--theta must lie in (0, 1)");
    model.theta = theta;
  }
  const auto labels = predict_multilabel(model, x);
  if (labels.empty()) {
    std::cerr << "no class scored above theta=" << model.theta << '\n';
    return kExitOk;
  }
  for (const auto& [c, score] : labels) {
    std::cout << cc.class_names[static_cast<std::size_t>(c)] << '\t' << format_full(score)
              << '\n';
  }
  return kExitOk;
}

int cmd_profile(const std::string& input, const std::string& class_name, int top,
                const PipelineFlags& flags) {
  if (top < 1) throw UsageError("--top must be >= 1");
  // Exploratory view: the vocabulary is fitted on the full dataset here, not
  // on a training split.
  LabeledCorpus corpus = deduplicate(load_corpus_any(input));
  EncodedDataset dataset = encode(corpus);
  StopwordSet stops = StopwordSet::bundled_english();
  if (!flags.stopwords.empty()) stops.load_domain_file(flags.stopwords);

  std::vector<TokenizedDoc> docs = preprocess_all(corpus.documents, stops);
  VocabOptions opts;
  opts.min_df = flags.min_df;
  if (flags.max_features > 0) opts.max_features = flags.max_features;
  const auto [vocab, X] = fit_transform(docs, opts);

  const int c = dataset.label_map.encode(class_name);
  for (const auto& [term, weight] : term_profile(X, dataset.y, vocab, c, top)) {
    std::cout << term << '\t' << format_full(weight) << '\n';
  }
  return kExitOk;
}

int cmd_synth(const std::string& output, std::uint64_t seed) {
  const LabeledCorpus corpus = make_synthetic_corpus(SyntheticSpec::reference(seed));
  write_jsonl(output, corpus);
  std::cout << "wrote " << corpus.size() << " synthetic documents across "
            << corpus.class_names.size() << " classes -> " << output << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"textml: document classification toolkit"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Convert a JSONL corpus to a dataset container");
  std::string ingest_input, ingest_out;
  bool ingest_dedupe = false;
  ingest->add_option("--input", ingest_input, "JSONL corpus")->required();
  ingest->add_flag("--dedupe", ingest_dedupe, "Drop multi-label duplicates");
  ingest->add_option("--out", ingest_out, "Output dataset path")->required();

  // train
  auto* train = app.add_subcommand("train", "Train a model and persist it");
  std::string train_input, train_mode = "multiclass", train_algo, train_out;
  PipelineFlags train_flags;
  train->add_option("--input", train_input, "Dataset container or JSONL corpus")->required();
  train->add_option("--mode", train_mode, "multiclass or ovr");
  train->add_option("--algo", train_algo,
                    "tree|nb|knn|logreg|ada|sgd|svm|ensemble, or all (ovr only)")
      ->required();
  train->add_option("--out", train_out, "Output model path")->required();
  add_pipeline_flags(train, train_flags);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a saved model on a dataset split");
  std::string eval_model, eval_input, eval_split = "test", eval_report;
  evaluate->add_option("--model", eval_model, "Model container")->required();
  evaluate->add_option("--input", eval_input, "Dataset container or JSONL corpus")->required();
  evaluate->add_option("--split", eval_split, "train, test, or all");
  evaluate->add_option("--report", eval_report, "CSV report output path")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Run the two experiment phases");
  std::string cmp_input, cmp_phase = "both", cmp_select = "cv", cmp_outdir;
  int cmp_folds = 5;
  double cmp_theta = 0.5;
  PipelineFlags cmp_flags;
  compare->add_option("--input", cmp_input, "Dataset container or JSONL corpus")->required();
  compare->add_option("--phase", cmp_phase, "one, two, or both");
  compare->add_option("--select-on", cmp_select,
                      "cv: cross-validated selection; test: paper-style test-set selection");
  compare->add_option("--folds", cmp_folds, "Cross-validation folds");
  compare->add_option("--theta", cmp_theta, "Multi-label decision threshold");
  compare->add_option("--outdir", cmp_outdir, "Report directory")->required();
  add_pipeline_flags(compare, cmp_flags);

  // predict
  auto* predict = app.add_subcommand("predict", "Classify a raw text file");
  std::string pred_model, pred_text;
  bool pred_multilabel = false;
  double pred_theta = 0.5;
  predict->add_option("--model", pred_model, "Model container")->required();
  predict->add_option("--text-file", pred_text, "UTF-8 text file")->required();
  predict->add_flag("--multilabel", pred_multilabel, "Emit every class scoring >= theta");
  auto* theta_opt = predict->add_option("--theta", pred_theta, "Override the stored threshold");

  // profile
  auto* profile = app.add_subcommand("profile", "Top terms of a class by summed TF-IDF");
  std::string prof_input, prof_class;
  int prof_top = 25;
  PipelineFlags prof_flags;
  profile->add_option("--input", prof_input, "Dataset container or JSONL corpus")->required();
  profile->add_option("--class", prof_class, "Class name")->required();
  profile->add_option("--top", prof_top, "Number of terms");
  profile->add_option("--stopwords", prof_flags.stopwords, "Domain stopword file");
  profile->add_option("--min-df", prof_flags.min_df, "Minimum document frequency");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate the reference synthetic corpus");
  std::string synth_out;
  std::uint64_t synth_seed = 0;
  synth->add_option("--out", synth_out, "Output JSONL path")->required();
  synth->add_option("--seed", synth_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_out, ingest_dedupe);
    if (*train) return cmd_train(train_input, train_mode, train_algo, train_flags, train_out);
    if (*evaluate) return cmd_evaluate(eval_model, eval_input, eval_split, eval_report);
    if (*compare) {
      return cmd_compare(cmp_input, cmp_phase, cmp_select, cmp_flags, cmp_outdir, cmp_folds,
                         cmp_theta);
    }
    if (*predict) {
      return cmd_predict(pred_model, pred_text, pred_multilabel, pred_theta,
                         theta_opt->count() > 0);
    }
    if (*profile) return cmd_profile(prof_input, prof_class, prof_top, prof_flags);
    if (*synth) return cmd_synth(synth_out, synth_seed);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
