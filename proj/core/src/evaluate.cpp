#include "qembed/evaluate.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "qembed/errors.hpp"

namespace qembed {

double f1_score(double precision, double recall) {
  if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0) {
    throw ConfigError("f1_score: precision and recall must lie in [0, 1]");
  }
  const double denom = precision + recall;
  if (denom == 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

EvalReport classification_report(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& classes) {
  if (y_true.size() != y_pred.size()) {
    throw ConfigError("classification_report: prediction count does not match truth count");
  }
  if (y_true.empty()) throw ConfigError("classification_report: no examples");
  if (classes.empty()) throw ConfigError("classification_report: no classes");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (!index.emplace(classes[c], c).second) {
      throw ConfigError("classification_report: duplicate class '" + classes[c] + "'");
    }
  }
  auto lookup = [&](const std::string& label, const char* which) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw ConfigError(std::string("classification_report: ") + which + " label '" + label +
                        "' is not in the class list");
    }
    return it->second;
  };

  std::vector<std::size_t> tp(classes.size(), 0);
  std::vector<std::size_t> fp(classes.size(), 0);
  std::vector<std::size_t> fn(classes.size(), 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const std::size_t t = lookup(y_true[i], "true");
    const std::size_t p = lookup(y_pred[i], "predicted");
    if (t == p) {
      ++tp[t];
    } else {
      ++fn[t];
      ++fp[p];
    }
  }

  EvalReport report;
  report.total = y_true.size();
  report.per_class.reserve(classes.size());
  double macro_sum = 0.0;
  double weighted_sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassMetrics m;
    m.label = classes[c];
    m.support = tp[c] + fn[c];
    const std::size_t predicted = tp[c] + fp[c];
    m.precision = predicted == 0 ? 0.0
                                 : static_cast<double>(tp[c]) / static_cast<double>(predicted);
    m.recall = m.support == 0 ? 0.0 : static_cast<double>(tp[c]) / static_cast<double>(m.support);
    m.f1 = f1_score(m.precision, m.recall);
    macro_sum += m.f1;
    weighted_sum += m.f1 * static_cast<double>(m.support);
    report.per_class.push_back(std::move(m));
  }
  report.macro_f1 = macro_sum / static_cast<double>(classes.size());
  report.weighted_f1 = weighted_sum / static_cast<double>(report.total);
  return report;
}

namespace {

EmbeddingModel fit_method(const std::vector<std::vector<std::string>>& token_lists,
                          const CVConfig& cfg, std::uint64_t fit_seed,
                          const EmbeddingModel* external) {
  switch (cfg.method) {
    case EmbeddingKind::Entropy: {
      EntropyOptions options;
      options.fill = cfg.fill;
      options.multiset_average = cfg.multiset_average;
      return fit_entropy_embedding(token_lists, build_vocabulary(token_lists), cfg.dim, fit_seed,
                                   options);
    }
    case EmbeddingKind::Tfidf:
      return fit_tfidf(token_lists, build_vocabulary(token_lists));
    case EmbeddingKind::PmiVsm:
      return fit_pmi_vsm(token_lists, build_vocabulary(token_lists), cfg.window, cfg.dim,
                         fit_seed, cfg.multiset_average);
    case EmbeddingKind::External:
      return *external;  // fitted elsewhere; folds share it read-only
  }
  throw ConfigError("cross_validate: invalid embedding method");
}

Matrix stack_vectors(const std::vector<QuestionVector>& vectors) {
  Matrix x(vectors.size(), vectors.empty() ? 0 : vectors[0].values.size(), 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < vectors[i].values.size(); ++j) x(i, j) = vectors[i].values[j];
  }
  return x;
}

}  // namespace

CVResult cross_validate(const Corpus& corpus, const PreprocessConfig& pre, const CVConfig& cfg) {
  if (cfg.method == EmbeddingKind::External && cfg.external_vectors_path.empty()) {
    throw ConfigError("cross_validate: external method needs a vector file (--vectors)");
  }

  // Preprocessing is per question and fold independent, so it runs once.
  std::vector<std::vector<std::string>> token_lists;
  std::vector<std::string> labels;
  token_lists.reserve(corpus.size());
  labels.reserve(corpus.size());
  for (const auto& q : corpus.questions()) {
    token_lists.push_back(preprocess_question(q.text, pre));
    labels.push_back(q.label);
  }

  EmbeddingModel external;
  if (cfg.method == EmbeddingKind::External) {
    external = load_external_vectors(cfg.external_vectors_path);
    external.multiset_average = cfg.multiset_average;
  }

  CVResult result;
  result.plan = split_folds(corpus.size(), labels, cfg.folds, cfg.seed, cfg.strategy);
  // External vectors fix their own width; cfg.dim only applies to fitted kinds.
  const std::size_t effective_dim =
      cfg.method == EmbeddingKind::External ? external.dim : cfg.dim;
  result.fingerprint = std::string("method=") + kind_name(cfg.method) +
                       ";dim=" + std::to_string(effective_dim) +
                       ";folds=" + std::to_string(cfg.folds) + ";seed=" + std::to_string(cfg.seed);
  result.predictions.assign(corpus.size(), "");

  const auto members = result.plan.fold_members();
  for (std::size_t fold = 0; fold < cfg.folds; ++fold) {
    std::vector<std::size_t> train_ids;
    train_ids.reserve(corpus.size() - members[fold].size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (result.plan.assignment[i] != fold) train_ids.push_back(i);
    }

    std::set<std::string> train_classes;
    std::vector<std::vector<std::string>> train_tokens;
    std::vector<std::string> train_labels;
    train_tokens.reserve(train_ids.size());
    train_labels.reserve(train_ids.size());
    for (std::size_t id : train_ids) {
      train_tokens.push_back(token_lists[id]);
      train_labels.push_back(labels[id]);
      train_classes.insert(labels[id]);
    }
    for (const auto& label : corpus.labels()) {
      if (train_classes.count(label) == 0) {
        result.warnings.push_back("fold " + std::to_string(fold) + ": class '" + label +
                                  "' absent from the training split");
      }
    }

    const std::uint64_t fit_seed = cfg.seed + fold;
    const EmbeddingModel model = fit_method(train_tokens, cfg, fit_seed, &external);

    std::vector<QuestionVector> train_vectors;
    train_vectors.reserve(train_ids.size());
    for (std::size_t id : train_ids) train_vectors.push_back(embed_question(model, token_lists[id]));
    Hyperparams hp = cfg.hp;
    hp.seed = fit_seed;
    const LogRegModel clf = train_ovr_logreg(stack_vectors(train_vectors), train_labels, hp);

    std::vector<std::string> fold_true;
    std::vector<std::string> fold_pred;
    fold_true.reserve(members[fold].size());
    fold_pred.reserve(members[fold].size());
    for (std::size_t id : members[fold]) {
      const QuestionVector qv = embed_question(model, token_lists[id]);
      const Prediction p = predict(clf, qv.values);
      result.predictions[id] = p.label;
      fold_true.push_back(labels[id]);
      fold_pred.push_back(p.label);
    }
    result.fold_reports.push_back(classification_report(fold_true, fold_pred, corpus.labels()));
  }

  std::vector<std::string> pred_in_id_order = result.predictions;
  result.pooled = classification_report(labels, pred_in_id_order, corpus.labels());
  return result;
}

}  // namespace qembed
