#ifndef QEMBED_EVALUATE_HPP
#define QEMBED_EVALUATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qembed/classify.hpp"
#include "qembed/corpus.hpp"
#include "qembed/embed.hpp"
#include "qembed/preprocess.hpp"

namespace qembed {

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  std::vector<ClassMetrics> per_class;  // in the given class order
  double macro_f1 = 0.0;                // unweighted mean over classes
  double weighted_f1 = 0.0;             // support-weighted mean
  std::size_t total = 0;
};

// 2PR/(P+R), 0 when P+R == 0. Inputs must lie in [0, 1].
double f1_score(double precision, double recall);

// Per-class precision/recall/F1/support with 0 on empty denominators, plus
// macro and support-weighted averages. Every label must be a member of
// classes.
EvalReport classification_report(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& classes);

struct CVConfig {
  EmbeddingKind method = EmbeddingKind::Entropy;
  std::size_t dim = 200;
  std::size_t window = 2;  // pmi-vsm co-occurrence radius
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  FoldStrategy strategy = FoldStrategy::PlainShuffled;
  double fill = kEntropySentinel;
  bool multiset_average = false;
  std::string external_vectors_path;  // required for EmbeddingKind::External
  Hyperparams hp;
};

struct CVResult {
  std::vector<EvalReport> fold_reports;   // one per fold, in fold order
  EvalReport pooled;                      // over concatenated out-of-fold predictions
  std::vector<std::string> predictions;   // out-of-fold predicted label per question id
  FoldPlan plan;
  std::string fingerprint;                // method/dim/folds/seed
  std::vector<std::string> warnings;      // e.g. a training split missing a class
};

// The full protocol: per fold, vocabulary, embedding and classifier are
// fitted on the other folds only (no test text reaches the vocabulary or the
// SVD), then the held-out fold is predicted. Deterministic for a fixed seed;
// per-fold fit seeds derive as seed + fold index.
CVResult cross_validate(const Corpus& corpus, const PreprocessConfig& pre, const CVConfig& cfg);

}  // namespace qembed

#endif  // QEMBED_EVALUATE_HPP
