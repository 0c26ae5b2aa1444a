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

#include "textml/model_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace textml {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// ---- hyperparameters ----

ordered_json hyperparams_to_json(Family family, const Hyperparams& hp) {
  ordered_json j;
  switch (family) {
    case Family::decision_tree:
      j["max_depth"] = hp.tree.max_depth;
      j["min_samples_split"] = hp.tree.min_samples_split;
      break;
    case Family::naive_bayes:
      j["alpha"] = hp.nb.alpha;
      break;
    case Family::knn:
      j["k"] = hp.knn.k;
      break;
    case Family::logistic_regression:
      j["eta"] = hp.logistic.eta;
      j["lambda"] = hp.logistic.lambda;
      j["max_iters"] = hp.logistic.max_iters;
      j["tol"] = hp.logistic.tol;
      break;
    case Family::adaboost:
      j["rounds"] = hp.ada.rounds;
      break;
    case Family::sgd:
      j["eta0"] = hp.sgd.eta0;
      j["lambda"] = hp.sgd.lambda;
      j["epochs"] = hp.sgd.epochs;
      break;
    case Family::svm:
      j["lambda"] = hp.svm.lambda;
      j["iters"] = hp.svm.iters;
      break;
    case Family::ensemble:
      j["base_a"] = family_name(hp.ensemble.base_a);
      j["base_b"] = family_name(hp.ensemble.base_b);
      j["rank"] = hp.ensemble.rank;
      break;
  }
  return j;
}

void hyperparams_from_json(Family family, const json& j, Hyperparams& hp) {
  switch (family) {
    case Family::decision_tree:
      hp.tree.max_depth = j.at("max_depth").get<int>();
      hp.tree.min_samples_split = j.at("min_samples_split").get<int>();
      break;
    case Family::naive_bayes:
      hp.nb.alpha = j.at("alpha").get<double>();
      break;
    case Family::knn:
      hp.knn.k = j.at("k").get<int>();
      break;
    case Family::logistic_regression:
      hp.logistic.eta = j.at("eta").get<double>();
      hp.logistic.lambda = j.at("lambda").get<double>();
      hp.logistic.max_iters = j.at("max_iters").get<int>();
      hp.logistic.tol = j.at("tol").get<double>();
      break;
    case Family::adaboost:
      hp.ada.rounds = j.at("rounds").get<int>();
      break;
    case Family::sgd:
      hp.sgd.eta0 = j.at("eta0").get<double>();
      hp.sgd.lambda = j.at("lambda").get<double>();
      hp.sgd.epochs = j.at("epochs").get<int>();
      break;
    case Family::svm:
      hp.svm.lambda = j.at("lambda").get<double>();
      hp.svm.iters = j.at("iters").get<int>();
      break;
    case Family::ensemble: {
      auto a = family_from_name(j.at("base_a").get<std::string>());
      auto b = family_from_name(j.at("base_b").get<std::string>());
      if (!a || !b) throw DataError("model container: unknown ensemble base family");
      hp.ensemble.base_a = *a;
      hp.ensemble.base_b = *b;
      hp.ensemble.rank = j.at("rank").get<int>();
      break;
    }
  }
}

// ---- dense/sparse helpers ----

ordered_json matrix_to_json(const DenseMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const json& j, Eigen::Index cols_hint = -1) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = cols_hint;
  if (rows > 0) cols = static_cast<Eigen::Index>(j.at(0).size());
  DenseMatrix m(rows, cols < 0 ? 0 : cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
  }
  return m;
}

ordered_json vector_to_json(const DenseVector& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

DenseVector vector_from_json(const json& j) {
  DenseVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  }
  return v;
}

ordered_json sparse_rows_to_json(const FeatureMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (FeatureMatrix::InnerIterator it(m, i); it; ++it) {
      row.push_back(ordered_json::array({it.col(), it.value()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FeatureMatrix sparse_rows_from_json(const json& j, Eigen::Index cols) {
  FeatureMatrix m(static_cast<Eigen::Index>(j.size()), cols);
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t i = 0; i < j.size(); ++i) {
    for (const auto& entry : j.at(i)) {
      triplets.emplace_back(static_cast<int>(i), entry.at(0).get<int>(),
                            entry.at(1).get<double>());
    }
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// ---- per-family parameters ----

ordered_json params_to_json(const TrainedModel& model);

TrainedModel model_from_json(const json& j);

ordered_json model_to_json(const TrainedModel& model) {
  ordered_json j;
  j["family"] = family_name(model.family);
  j["hyperparameters"] = hyperparams_to_json(model.family, model.spec.params);
  j["seed"] = model.spec.seed;
  j["n_features"] = model.n_features;
  j["n_classes"] = model.n_classes;
  j["warnings"] = model.warnings;
  j["parameters"] = params_to_json(model);
  return j;
}

ordered_json params_to_json(const TrainedModel& model) {
  ordered_json p;
  if (const auto* c = std::get_if<ConstantModel>(&model.params)) {
    p["kind"] = "constant";
    p["class_index"] = c->class_index;
    return p;
  }
  switch (model.family) {
    case Family::decision_tree: {
      const auto& tree = std::get<TreeModel>(model.params);
      ordered_json nodes = ordered_json::array();
      for (const TreeNode& n : tree.nodes) {
        ordered_json node;
        node["feature"] = n.feature;
        node["threshold"] = n.threshold;
        node["left"] = n.left;
        node["right"] = n.right;
        node["counts"] = vector_to_json(n.counts);
        nodes.push_back(std::move(node));
      }
      p["kind"] = "tree";
      p["nodes"] = std::move(nodes);
      return p;
    }
    case Family::naive_bayes: {
      const auto& nb = std::get<NaiveBayesModel>(model.params);
      p["kind"] = "naive_bayes";
      // Absent classes carry -inf log-priors; JSON has no inf, so the count
      // form is stored instead.
      DenseVector prior = nb.log_prior;
      ordered_json priors = ordered_json::array();
      for (Eigen::Index c = 0; c < prior.size(); ++c) {
        if (std::isinf(prior[c])) {
          priors.push_back(nullptr);
        } else {
          priors.push_back(prior[c]);
        }
      }
      p["log_prior"] = std::move(priors);
      p["log_likelihood"] = matrix_to_json(nb.log_likelihood);
      return p;
    }
    case Family::knn: {
      const auto& knn = std::get<KnnModel>(model.params);
      p["kind"] = "knn";
      p["k"] = knn.k;
      p["labels"] = knn.labels;
      p["rows"] = sparse_rows_to_json(knn.rows);
      return p;
    }
    case Family::logistic_regression:
    case Family::sgd:
    case Family::svm: {
      const auto& lin = std::get<LinearModel>(model.params);
      p["kind"] = "linear";
      p["binary_sigmoid"] = lin.binary_sigmoid;
      p["weights"] = matrix_to_json(lin.weights);
      p["bias"] = vector_to_json(lin.bias);
      return p;
    }
    case Family::adaboost: {
      const auto& ada = std::get<AdaBoostModel>(model.params);
      p["kind"] = "adaboost";
      ordered_json stumps = ordered_json::array();
      for (const Stump& s : ada.stumps) {
        ordered_json stump;
        stump["feature"] = s.feature;
        stump["threshold"] = s.threshold;
        stump["left_class"] = s.left_class;
        stump["right_class"] = s.right_class;
        stump["alpha"] = s.alpha;
        stumps.push_back(std::move(stump));
      }
      p["stumps"] = std::move(stumps);
      p["alpha_sum"] = ada.alpha_sum;
      return p;
    }
    case Family::ensemble: {
      const auto& e = std::get<EnsembleModel>(model.params);
      p["kind"] = "ensemble";
      p["rank"] = e.rank;
      p["base_a"] = model_to_json(*e.base_a);
      p["base_b"] = model_to_json(*e.base_b);
      return p;
    }
  }
  throw std::invalid_argument("params_to_json: unknown family");
}

TrainedModel model_from_json(const json& j) {
  TrainedModel model;
  const auto fam = family_from_name(j.at("family").get<std::string>());
  if (!fam) throw DataError("model container: unknown family \"" +
                            j.at("family").get<std::string>() + "\"");
  model.family = *fam;
  model.spec.family = *fam;
  hyperparams_from_json(*fam, j.at("hyperparameters"), model.spec.params);
  model.spec.seed = j.at("seed").get<std::uint64_t>();
  model.n_features = j.at("n_features").get<int>();
  model.n_classes = j.at("n_classes").get<int>();
  model.warnings = j.at("warnings").get<std::vector<std::string>>();

  const json& p = j.at("parameters");
  const std::string kind = p.at("kind").get<std::string>();
  if (kind == "constant") {
    model.params = ConstantModel{p.at("class_index").get<int>()};
    return model;
  }
  if (kind == "tree") {
    TreeModel tree;
    for (const auto& nj : p.at("nodes")) {
      TreeNode n;
      n.feature = nj.at("feature").get<int>();
      n.threshold = nj.at("threshold").get<double>();
      n.left = nj.at("left").get<int>();
      n.right = nj.at("right").get<int>();
      n.counts = vector_from_json(nj.at("counts"));
      tree.nodes.push_back(std::move(n));
    }
    model.params = std::move(tree);
    return model;
  }
  if (kind == "naive_bayes") {
    NaiveBayesModel nb;
    const auto& priors = p.at("log_prior");
    nb.log_prior.resize(static_cast<Eigen::Index>(priors.size()));
    for (Eigen::Index c = 0; c < nb.log_prior.size(); ++c) {
      const auto& v = priors.at(static_cast<std::size_t>(c));
      nb.log_prior[c] =
          v.is_null() ? -std::numeric_limits<double>::infinity() : v.get<double>();
    }
    nb.log_likelihood = matrix_from_json(p.at("log_likelihood"), model.n_features);
    model.params = std::move(nb);
    return model;
  }
  if (kind == "knn") {
    KnnModel knn;
    knn.k = p.at("k").get<int>();
    knn.labels = p.at("labels").get<std::vector<int>>();
    knn.rows = sparse_rows_from_json(p.at("rows"), model.n_features);
    model.params = std::move(knn);
    return model;
  }
  if (kind == "linear") {
    LinearModel lin;
    lin.binary_sigmoid = p.at("binary_sigmoid").get<bool>();
    lin.weights = matrix_from_json(p.at("weights"), model.n_features);
    lin.bias = vector_from_json(p.at("bias"));
    model.params = std::move(lin);
    return model;
  }
  if (kind == "adaboost") {
    AdaBoostModel ada;
    for (const auto& sj : p.at("stumps")) {
      Stump s;
      s.feature = sj.at("feature").get<int>();
      s.threshold = sj.at("threshold").get<double>();
      s.left_class = sj.at("left_class").get<int>();
      s.right_class = sj.at("right_class").get<int>();
      s.alpha = sj.at("alpha").get<double>();
      ada.stumps.push_back(s);
    }
    ada.alpha_sum = p.at("alpha_sum").get<double>();
    model.params = std::move(ada);
    return model;
  }
  if (kind == "ensemble") {
    EnsembleModel e;
    e.rank = p.at("rank").get<int>();
    e.base_a = std::make_shared<const TrainedModel>(model_from_json(p.at("base_a")));
    e.base_b = std::make_shared<const TrainedModel>(model_from_json(p.at("base_b")));
    model.params = std::move(e);
    return model;
  }
  throw DataError("model container: unknown parameter kind \"" + kind + "\"");
}

// ---- vocabulary / split ----

ordered_json vocab_to_json(const Vocabulary& vocab) {
  ordered_json v;
  v["formula_version"] = Vocabulary::kFormulaVersion;
  v["n_docs"] = vocab.n_docs();
  v["min_df"] = vocab.options().min_df;
  if (vocab.options().max_features) {
    v["max_features"] = *vocab.options().max_features;
  } else {
    v["max_features"] = nullptr;
  }
  ordered_json terms = ordered_json::array();
  for (int i = 0; i < vocab.size(); ++i) {
    terms.push_back(ordered_json::array(
        {vocab.terms()[static_cast<std::size_t>(i)], i, vocab.df()[static_cast<std::size_t>(i)]}));
  }
  v["terms"] = std::move(terms);
  return v;
}

Vocabulary vocab_from_json(const json& j) {
  const std::string formula = j.at("formula_version").get<std::string>();
  if (formula != Vocabulary::kFormulaVersion) {
    throw DataError("vocabulary formula_version \"" + formula + "\" unsupported; expected \"" +
                    Vocabulary::kFormulaVersion + "\"");
  }
  VocabOptions opts;
  opts.min_df = j.at("min_df").get<int>();
  if (!j.at("max_features").is_null()) opts.max_features = j.at("max_features").get<int>();
  std::vector<std::string> terms;
  std::vector<int> df;
  for (const auto& t : j.at("terms")) {
    terms.push_back(t.at(0).get<std::string>());
    if (t.at(1).get<int>() != static_cast<int>(df.size())) {
      throw DataError("vocabulary terms are not in index order");
    }
    df.push_back(t.at(2).get<int>());
  }
  return Vocabulary(std::move(terms), std::move(df), j.at("n_docs").get<int>(), opts);
}

ordered_json split_to_json(const SplitSpec& split) {
  ordered_json s;
  s["train_fraction"] = split.train_fraction;
  s["seed"] = split.seed;
  s["stratified"] = split.stratified;
  return s;
}

SplitSpec split_from_json(const json& j) {
  SplitSpec s;
  s.train_fraction = j.at("train_fraction").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.stratified = j.at("stratified").get<bool>();
  return s;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model container: " + path);
  out << j.dump(1, '\t') << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model container: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("corrupt model container " + path + ": " + e.what());
  }
}

}  // namespace

void save_model(const std::string& path, const ModelContainer& container) {
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  ordered_json inner = model_to_json(container.model);
  j["family"] = inner["family"];
  j["hyperparameters"] = inner["hyperparameters"];
  j["seed"] = inner["seed"];
  j["n_features"] = inner["n_features"];
  j["n_classes"] = inner["n_classes"];
  j["warnings"] = inner["warnings"];
  j["class_names"] = container.class_names;
  j["split"] = split_to_json(container.split);
  j["vocabulary_ref"] = vocab_to_json(container.vocabulary);
  j["parameters"] = inner["parameters"];
  write_json_file(path, j);
}

void save_combined(const std::string& path, const CombinedContainer& container) {
  ordered_json j;
  j["format_version"] = kCombinedFormatVersion;
  j["theta"] = container.model.theta;
  j["n_features"] = container.model.n_features;
  j["class_names"] = container.class_names;
  j["split"] = split_to_json(container.split);
  ordered_json classes = ordered_json::array();
  for (const auto& entry : container.model.classes) {
    ordered_json c;
    c["class_name"] = entry.class_name;
    c["class_index"] = entry.class_index;
    c["selection_f1"] = entry.selection_f1;
    ordered_json algo;
    algo["family"] = family_name(entry.algorithm.family);
    algo["hyperparameters"] = hyperparams_to_json(entry.algorithm.family, entry.algorithm.params);
    algo["seed"] = entry.algorithm.seed;
    c["algorithm"] = std::move(algo);
    c["model"] = model_to_json(*entry.model);
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  j["vocabulary"] = vocab_to_json(container.vocabulary);
  write_json_file(path, j);
}

AnyContainer load_container(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("format_version")) {
    throw DataError("model container " + path + " has no format_version");
  }
  const std::string version = j.at("format_version").get<std::string>();
  if (version == kModelFormatVersion) {
    ModelContainer c;
    c.model = model_from_json(j);
    c.vocabulary = vocab_from_json(j.at("vocabulary_ref"));
    c.class_names = j.at("class_names").get<std::vector<std::string>>();
    c.split = split_from_json(j.at("split"));
    return c;
  }
  if (version == kCombinedFormatVersion) {
    CombinedContainer c;
    c.class_names = j.at("class_names").get<std::vector<std::string>>();
    c.split = split_from_json(j.at("split"));
    c.vocabulary = vocab_from_json(j.at("vocabulary"));
    c.model.theta = j.at("theta").get<double>();
    c.model.n_features = j.at("n_features").get<int>();
    for (const auto& cj : j.at("classes")) {
      OvRClassEntry entry;
      entry.class_name = cj.at("class_name").get<std::string>();
      entry.class_index = cj.at("class_index").get<int>();
      entry.selection_f1 = cj.at("selection_f1").get<double>();
      const auto fam = family_from_name(cj.at("algorithm").at("family").get<std::string>());
      if (!fam) throw DataError("combined container: unknown algorithm family");
      entry.algorithm.family = *fam;
      hyperparams_from_json(*fam, cj.at("algorithm").at("hyperparameters"),
                            entry.algorithm.params);
      entry.algorithm.seed = cj.at("algorithm").at("seed").get<std::uint64_t>();
      entry.model = std::make_shared<const TrainedModel>(model_from_json(cj.at("model")));
      c.model.classes.push_back(std::move(entry));
    }
    return c;
  }
  throw DataError("model container " + path + " has format_version \"" + version +
                  "\"; this build supports \"" + kModelFormatVersion + "\" and \"" +
                  kCombinedFormatVersion + "\"");
}

// ---- dataset container ----

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw ParseError("dataset container truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw ParseError("dataset container truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_string(std::ostream& out, const std::string& s, bool long_field) {
  if (long_field) {
    write_u64(out, s.size());
  } else {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
  }
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in, bool long_field) {
  const std::uint64_t len = long_field ? read_u64(in) : read_u32(in);
  std::string s(len, '\0');
  in.read(s.data(), static_cast<std::streamsize>(len));
  if (!in) throw ParseError("dataset container truncated");
  return s;
}

}  // namespace

void save_dataset(const std::string& path, const LabeledCorpus& corpus, bool deduped) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset: " + path);
  out.write(kDatasetMagic, static_cast<std::streamsize>(std::strlen(kDatasetMagic)));
  out.put(deduped ? 1 : 0);
  write_u64(out, corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    write_string(out, corpus.documents[i].id, false);
    write_string(out, corpus.labels[i], false);
    write_string(out, corpus.documents[i].text, true);
  }
  if (!out) throw DataError("failed writing dataset: " + path);
}

LabeledCorpus load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset: " + path);
  const std::size_t magic_len = std::strlen(kDatasetMagic);
  std::string magic(magic_len, '\0');
  in.read(magic.data(), static_cast<std::streamsize>(magic_len));
  if (!in || magic != kDatasetMagic) {
    throw DataError("not a textml dataset container: " + path);
  }
  in.get();  // dedupe flag; informational
  const std::uint64_t count = read_u64(in);

  LabeledCorpus corpus;
  std::unordered_map<std::string, bool> seen;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string id = read_string(in, false);
    std::string label = read_string(in, false);
    std::string text = read_string(in, true);
    if (seen.emplace(label, true).second) corpus.class_names.push_back(label);
    corpus.documents.push_back(Document{std::move(id), std::move(text)});
    corpus.labels.push_back(std::move(label));
  }
  return corpus;
}

LabeledCorpus load_corpus_any(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw DataError("cannot open corpus: " + path);
  const std::size_t magic_len = std::strlen(kDatasetMagic);
  std::string head(magic_len, '\0');
  probe.read(head.data(), static_cast<std::streamsize>(magic_len));
  const bool is_container =
      probe.gcount() == static_cast<std::streamsize>(magic_len) && head == kDatasetMagic;
  probe.close();
  return is_container ? load_dataset(path) : load_jsonl(path, warnings);
}

}  // namespace textml
