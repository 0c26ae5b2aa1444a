#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "textml/harness.hpp"
#include "textml/synthetic.hpp"

using namespace textml;

namespace {

// Separable mini-corpus: high exclusive-keyword rate, no overlap pair.
SyntheticSpec separable_spec(int classes, int per_class, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.class_sizes.assign(static_cast<std::size_t>(classes), per_class);
  spec.keyword_fraction = 0.75;
  spec.bleed_fraction = 0.0;
  spec.seed = seed;
  return spec;
}

ExperimentConfig config_for(const std::string& path, std::uint64_t seed) {
  ExperimentConfig config;
  config.corpus_path = path;
  config.master_seed = seed;
  return config;
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("phase one separates an easy synthetic corpus with every algorithm") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 40, 11));
  ExperimentConfig config = config_for("", 5);
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const PhaseOneReport report = run_phase_one(pipeline, config);
  REQUIRE(report.rows.size() == 8);  // seven bases plus the ensemble
  for (const auto& row : report.rows) {
    INFO(row.name);
    CHECK(row.f1 >= 0.9);
  }
  CHECK(report.rows.back().name == "ensemble");
}

TEST_CASE("phase one with a single-algorithm roster skips the ensemble") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 25, 13));
  ExperimentConfig config = config_for("", 5);
  config.roster = {Family::naive_bayes};
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const PhaseOneReport report = run_phase_one(pipeline, config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].name == "naive_bayes");
}

TEST_CASE("identical configs render byte-identical reports") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 30, 17));
  ExperimentConfig config = config_for("", 21);
  config.roster = {Family::naive_bayes, Family::logistic_regression, Family::sgd};

  Pipeline p1 = prepare_pipeline(config, corpus);
  Pipeline p2 = prepare_pipeline(config, corpus);
  const PhaseOneReport r1 = run_phase_one(p1, config);
  const PhaseOneReport r2 = run_phase_one(p2, config);
  CHECK(phase_one_to_csv(r1) == phase_one_to_csv(r2));
  CHECK(phase_one_to_markdown(r1) == phase_one_to_markdown(r2));

  const PhaseTwoOutcome t1 = run_phase_two(p1, config);
  const PhaseTwoOutcome t2 = run_phase_two(p2, config);
  CHECK(phase_two_to_csv(t1.report) == phase_two_to_csv(t2.report));
  CHECK(report_to_csv(t1.report.combined_report) == report_to_csv(t2.report.combined_report));
}

TEST_CASE("phase-two grid cells match an independent recomputation") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 25, 29));
  ExperimentConfig config = config_for("", 33);
  config.roster = {Family::naive_bayes, Family::logistic_regression};
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const PhaseTwoOutcome outcome = run_phase_two(pipeline, config);

  // Rebuild the same roster the harness used (bases plus the ensemble entry).
  std::vector<AlgorithmSpec> roster;
  for (Family f : config.roster) {
    AlgorithmSpec spec;
    spec.family = f;
    spec.params = config.hyperparams;
    roster.push_back(spec);
  }
  {
    AlgorithmSpec spec;
    spec.family = Family::ensemble;
    spec.params = config.hyperparams;
    roster.push_back(spec);
  }

  for (int c = 0; c < pipeline.num_classes(); ++c) {
    const PerClassResult r =
        train_class_roster(c, roster, pipeline.X_train, pipeline.train.y,
                           pipeline.num_classes(), SelectionSpec{}, config.resample,
                           config.master_seed);
    const std::vector<int> y_bin = binarize(pipeline.test.y, c, pipeline.num_classes());
    for (std::size_t a = 0; a < roster.size(); ++a) {
      std::vector<int> y_hat;
      for (Eigen::Index i = 0; i < pipeline.X_test.rows(); ++i) {
        y_hat.push_back(predict(*r.per_algorithm[a].model, row_of(pipeline.X_test, i)));
      }
      const ConfusionMatrix cm = confusion(y_bin, y_hat, 2);
      const ClassMetrics m = prf1(class_counts(cm, 1));
      const PhaseTwoCell& cell = outcome.report.grid[a][static_cast<std::size_t>(c)];
      CHECK(cell.f1 == m.f1);
      CHECK(cell.precision == m.precision);
      CHECK(cell.recall == m.recall);
      CHECK(cell.accuracy == accuracy(cm));
      CHECK(cell.selection_f1 == r.per_algorithm[a].selection_f1);
    }
  }
}

TEST_CASE("test-split documents never reach fitting, oversampling, or selection") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 30, 41));
  ExperimentConfig config = config_for("", 9);
  config.roster = {Family::naive_bayes, Family::sgd};
  Pipeline pipeline = prepare_pipeline(config, corpus);
  run_phase_one(pipeline, config);
  run_phase_two(pipeline, config);

  const std::set<std::string> test_ids(pipeline.test.doc_ids.begin(),
                                       pipeline.test.doc_ids.end());
  CHECK(!pipeline.audit.vocab_fit_doc_ids.empty());
  CHECK(!pipeline.audit.oversample_doc_ids.empty());
  CHECK(!pipeline.audit.selection_doc_ids.empty());
  for (const auto& id : pipeline.audit.vocab_fit_doc_ids) CHECK(test_ids.count(id) == 0);
  for (const auto& id : pipeline.audit.oversample_doc_ids) CHECK(test_ids.count(id) == 0);
  for (const auto& id : pipeline.audit.selection_doc_ids) CHECK(test_ids.count(id) == 0);
}

TEST_CASE("term profiles surface the seeded keywords") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 30, 53));
  ExperimentConfig config = config_for("", 3);
  Pipeline pipeline = prepare_pipeline(config, corpus);

  // class 0 is area-a with exclusive pool kwa*
  const auto profile =
      term_profile(pipeline.X_train, pipeline.train.y, pipeline.vocabulary, 0, 3);
  REQUIRE(profile.size() == 3);
  bool found = false;
  for (const auto& [term, weight] : profile) {
    found = found || term.rfind("kwa", 0) == 0;
  }
  CHECK(found);

  // n beyond the vocabulary clamps to the full ranked list
  const auto all = term_profile(pipeline.X_train, pipeline.train.y, pipeline.vocabulary, 0,
                                10 * pipeline.vocabulary.size());
  CHECK(static_cast<int>(all.size()) == pipeline.vocabulary.size());

  CHECK_THROWS_AS(
      term_profile(pipeline.X_train, pipeline.train.y, pipeline.vocabulary, 99, 5),
      DataError);
}

TEST_CASE("disjoint classes have disjoint term profiles") {
  SyntheticSpec spec = separable_spec(2, 20, 61);
  spec.keyword_fraction = 1.0;  // every token from the class's own pool
  const LabeledCorpus corpus = make_synthetic_corpus(spec);
  ExperimentConfig config = config_for("", 1);
  config.vocab.min_df = 1;
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const auto a = term_profile(pipeline.X_train, pipeline.train.y, pipeline.vocabulary, 0, 10);
  const auto b = term_profile(pipeline.X_train, pipeline.train.y, pipeline.vocabulary, 1, 10);
  std::set<std::string> a_terms;
  for (const auto& [term, w] : a) {
    if (w > 0.0) a_terms.insert(term);
  }
  for (const auto& [term, w] : b) {
    if (w > 0.0) CHECK(a_terms.count(term) == 0);
  }
}

TEST_CASE("model containers round-trip every family exactly") {
  Rng rng(2101);
  const FeatureMatrix X = oracles::random_sparse(rng, 30, 8, 0.5, true, true);
  const std::vector<int> y = oracles::random_labels(rng, 30, 3);
  const auto dir = temp_dir("tml_models");

  std::vector<std::string> terms;
  std::vector<int> df;
  for (int i = 0; i < 8; ++i) {
    terms.push_back("t" + std::to_string(i));
    df.push_back(2 + i);
  }
  const Vocabulary vocab(terms, df, 30, VocabOptions{1, std::nullopt});

  std::vector<AlgorithmSpec> specs;
  for (Family f : base_families()) {
    AlgorithmSpec spec;
    spec.family = f;
    spec.seed = 99;
    specs.push_back(spec);
  }
  AlgorithmSpec ens;
  ens.family = Family::ensemble;
  ens.seed = 99;
  specs.push_back(ens);

  for (const auto& spec : specs) {
    const TrainedModel model = train(X, y, spec, 3);
    const auto path = (dir / (family_name(spec.family) + ".json")).string();
    save_model(path, ModelContainer{model, vocab, {"a", "b", "c"}, SplitSpec{}});
    const AnyContainer loaded = load_container(path);
    REQUIRE(std::holds_alternative<ModelContainer>(loaded));
    const ModelContainer& mc = std::get<ModelContainer>(loaded);
    CHECK(mc.vocabulary.terms() == vocab.terms());

    Rng qrng(7);
    for (int q = 0; q < 100; ++q) {
      const FeatureMatrix Q = oracles::random_sparse(qrng, 1, 8, 0.5, true, true);
      const SparseVector x = row_of(Q, 0);
      const DenseVector before = predict_proba(model, x);
      const DenseVector after = predict_proba(mc.model, x);
      REQUIRE(before.size() == after.size());
      for (int c = 0; c < before.size(); ++c) CHECK(before[c] == after[c]);
      CHECK(predict(model, x) == predict(mc.model, x));
    }
  }
}

TEST_CASE("combined containers round-trip multilabel outputs exactly") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 25, 71));
  ExperimentConfig config = config_for("", 19);
  config.roster = {Family::naive_bayes, Family::logistic_regression};
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const PhaseTwoOutcome outcome = run_phase_two(pipeline, config);

  const auto path = (temp_dir("tml_models") / "combined.json").string();
  save_combined(path, CombinedContainer{outcome.combined, pipeline.vocabulary,
                                        pipeline.train.label_map.names(), config.split});
  const AnyContainer loaded = load_container(path);
  REQUIRE(std::holds_alternative<CombinedContainer>(loaded));
  const CombinedContainer& cc = std::get<CombinedContainer>(loaded);
  REQUIRE(cc.model.classes.size() == outcome.combined.classes.size());

  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(pipeline.X_test.rows(), 100); ++i) {
    const SparseVector x = row_of(pipeline.X_test, i);
    const auto before = predict_multilabel(outcome.combined, x);
    const auto after = predict_multilabel(cc.model, x);
    REQUIRE(before.size() == after.size());
    for (std::size_t j = 0; j < before.size(); ++j) {
      CHECK(before[j].first == after[j].first);
      CHECK(before[j].second == after[j].second);
    }
  }
}

TEST_CASE("unknown container versions raise an error naming both versions") {
  const auto dir = temp_dir("tml_models");
  const auto path = (dir / "bogus.json").string();
  {
    std::ofstream out(path);
    out << R"({"format_version":"textml-model-v99"})";
  }
  try {
    load_container(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("textml-model-v99") != std::string::npos);
    CHECK(msg.find(kModelFormatVersion) != std::string::npos);
  }

  const auto corrupt = (dir / "corrupt.json").string();
  {
    std::ofstream out(corrupt);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_container(corrupt), ParseError);
}

TEST_CASE("dataset containers round-trip and are sniffed by loaders") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(2, 8, 83));
  const auto dir = temp_dir("tml_data");
  const auto bin_path = (dir / "data.bin").string();
  save_dataset(bin_path, corpus, true);
  const LabeledCorpus loaded = load_dataset(bin_path);
  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded.documents[i].id == corpus.documents[i].id);
    CHECK(loaded.documents[i].text == corpus.documents[i].text);
    CHECK(loaded.labels[i] == corpus.labels[i]);
  }

  const auto jsonl_path = (dir / "data.jsonl").string();
  write_jsonl(jsonl_path, corpus);
  const LabeledCorpus from_jsonl = load_corpus_any(jsonl_path);
  const LabeledCorpus from_bin = load_corpus_any(bin_path);
  CHECK(from_jsonl.size() == from_bin.size());

  CHECK_THROWS_AS(load_dataset(jsonl_path), DataError);
}

TEST_CASE("heldout selection marks the grid maxima as winners") {
  const LabeledCorpus corpus = make_synthetic_corpus(separable_spec(3, 25, 97));
  ExperimentConfig config = config_for("", 77);
  config.roster = {Family::decision_tree, Family::naive_bayes, Family::sgd};
  config.selection = SelectionSpec::Mode::Heldout;
  Pipeline pipeline = prepare_pipeline(config, corpus);
  const PhaseTwoOutcome outcome = run_phase_two(pipeline, config);

  for (std::size_t c = 0; c < outcome.report.class_names.size(); ++c) {
    const int winner = outcome.report.winner_per_class[c];
    for (std::size_t a = 0; a < outcome.report.grid.size(); ++a) {
      CHECK(outcome.report.grid[a][c].f1 <=
            outcome.report.grid[static_cast<std::size_t>(winner)][c].f1 + 1e-12);
    }
  }
}
