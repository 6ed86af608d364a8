// Release gate: every check the project must pass before shipping, one
// PASS/FAIL line each, nonzero exit when anything fails. Tolerances are
// stated inline next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "qembed/classify.hpp"
#include "qembed/corpus.hpp"
#include "qembed/embed.hpp"
#include "qembed/errors.hpp"
#include "qembed/evaluate.hpp"
#include "qembed/matrix.hpp"
#include "qembed/preprocess.hpp"
#include "qembed/svd.hpp"
#include "testsupport.hpp"

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& details) {
  std::printf("ACCEPTANCE %d %s: %s (%s)\n", number, name.c_str(), ok ? "PASS" : "FAIL",
              details.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// --------------------------------------------------------------- criterion 1

// Entropy matrix equals a naive double-loop recount, bit for bit, on 100
// random corpora (up to 50 questions, up to 30 distinct words), within 5 s.
void criterion_entropy_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(11);
  std::size_t cells = 0;
  bool identical = true;
  std::string detail;
  for (int trial = 0; trial < 100 && identical; ++trial) {
    const std::size_t n = 1 + qembed::rng::bounded(gen, 50);
    const std::size_t pool = 1 + qembed::rng::bounded(gen, 30);
    std::vector<std::vector<std::string>> lists(n);
    for (auto& list : lists) {
      const std::size_t len = 1 + qembed::rng::bounded(gen, 12);
      for (std::size_t t = 0; t < len; ++t) {
        list.push_back("w" + std::to_string(qembed::rng::bounded(gen, pool)));
      }
    }
    const qembed::Vocabulary vocab = qembed::build_vocabulary(lists);
    const qembed::EntropyMatrix ours = qembed::build_entropy_matrix(lists, vocab);
    const qembed::Matrix oracle =
        ts::naive_entropy_matrix(lists, vocab, qembed::kEntropySentinel);
    for (std::size_t i = 0; i < oracle.rows() && identical; ++i) {
      for (std::size_t j = 0; j < oracle.cols(); ++j) {
        ++cells;
        if (ours.values(i, j) != oracle(i, j)) {
          identical = false;
          detail = "trial " + std::to_string(trial) + " cell (" + std::to_string(i) + "," +
                   std::to_string(j) + "): " + fmt(ours.values(i, j)) + " vs " +
                   fmt(oracle(i, j));
          break;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 5.0;
  report(1, "entropy-matrix-oracle", identical && in_time,
         identical ? ("100 corpora, " + std::to_string(cells) + " cells bit-identical, " +
                      fmt(elapsed) + "s" + (in_time ? "" : ", OVER the 5s budget"))
                   : detail);
}

// --------------------------------------------------------------- criterion 2

// Truncated SVD on 50 random matrices up to 60x40: orthonormal columns within
// 1e-8, non-increasing singular values, and Eckart-Young reconstruction error
// within 1e-8 of the tail norm from an independent Jacobi/Gram oracle; 30 s.
void criterion_svd() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(22);
  bool ok = true;
  std::string detail;
  double worst_ortho = 0.0, worst_tail = 0.0;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    const std::size_t m = 2 + qembed::rng::bounded(gen, 59);
    const std::size_t n = 2 + qembed::rng::bounded(gen, 39);
    const std::size_t k = 1 + qembed::rng::bounded(gen, std::min(m, n));
    const qembed::Matrix a = ts::random_matrix(m, n, gen);
    const qembed::SvdFactors f = qembed::truncated_svd(a, k);

    // column orthonormality of U and V
    for (const qembed::Matrix* q : {&f.u, &f.v}) {
      for (std::size_t c1 = 0; c1 < q->cols(); ++c1) {
        for (std::size_t c2 = c1; c2 < q->cols(); ++c2) {
          double dot = 0.0;
          for (std::size_t r = 0; r < q->rows(); ++r) dot += (*q)(r, c1) * (*q)(r, c2);
          const double target = c1 == c2 ? 1.0 : 0.0;
          worst_ortho = std::max(worst_ortho, std::abs(dot - target));
        }
      }
    }
    if (worst_ortho > 1e-8) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ": orthonormality residual " + fmt(worst_ortho);
      break;
    }
    // ordering
    for (std::size_t i = 0; i + 1 < f.sigma.size(); ++i) {
      if (f.sigma[i] < f.sigma[i + 1]) {
        ok = false;
        detail = "trial " + std::to_string(trial) + ": sigma increases at " + std::to_string(i);
        break;
      }
    }
    if (!ok) break;
    // Eckart-Young against the oracle tail
    const std::vector<double> oracle_sigma = ts::oracle_singular_values(a);
    const double expected = ts::oracle_tail_norm(oracle_sigma, k);
    const double actual = qembed::frobenius_error(a, f);
    worst_tail = std::max(worst_tail, std::abs(actual - expected));
    if (std::abs(actual - expected) > 1e-8) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ": reconstruction error " + fmt(actual) +
               " vs oracle tail " + fmt(expected);
      break;
    }
  }
  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 30.0;
  report(2, "truncated-svd", ok && in_time,
         ok ? ("50 matrices, max ortho residual " + fmt(worst_ortho) + ", max tail deviation " +
               fmt(worst_tail) + ", " + fmt(elapsed) + "s" +
               (in_time ? "" : ", OVER the 30s budget"))
            : detail);
}

// --------------------------------------------------------------- criterion 3

// classification_report equals a brute-force recount exactly on 1000 random
// label sequences (length <= 200, <= 8 classes), and the published six-class
// F1 column [0.77 0.62 0.73 0.24 0.74 0.91] averages to 0.668 +/- 0.001.
void criterion_metrics() {
  std::mt19937_64 gen(33);
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    std::vector<std::string> y_true, y_pred, classes;
    ts::random_labels(gen, 200, 8, y_true, y_pred, classes);
    const qembed::EvalReport ours = qembed::classification_report(y_true, y_pred, classes);
    const qembed::EvalReport oracle = ts::brute_force_report(y_true, y_pred, classes);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (ours.per_class[c].precision != oracle.per_class[c].precision ||
          ours.per_class[c].recall != oracle.per_class[c].recall ||
          ours.per_class[c].f1 != oracle.per_class[c].f1 ||
          ours.per_class[c].support != oracle.per_class[c].support) {
        ok = false;
        detail = "trial " + std::to_string(trial) + ": class " + classes[c] + " differs";
        break;
      }
    }
    if (ours.macro_f1 != oracle.macro_f1 || ours.weighted_f1 != oracle.weighted_f1) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ": aggregate differs";
    }
  }

  const std::vector<double> column = {0.77, 0.62, 0.73, 0.24, 0.74, 0.91};
  double mean = 0.0;
  for (double v : column) mean += v;
  mean /= static_cast<double>(column.size());
  const bool macro_ok = std::abs(mean - 0.668) <= 0.001;
  if (!macro_ok) {
    ok = false;
    detail = "six-class macro mean " + fmt(mean) + " not within 0.001 of 0.668";
  }
  report(3, "metric-oracle", ok,
         ok ? ("1000 sequences exact, macro of published column = " + fmt(mean)) : detail);
}

// --------------------------------------------------------------- criterion 4

// The classifier reaches accuracy 1.0 on three linearly separable Gaussian
// blobs (d=5, 60 points, margin >= 2 sigma), and its analytic gradient agrees
// with central finite differences to a relative 1e-4.
void criterion_classifier() {
  bool ok = true;
  std::string detail;

  const ts::Blobs blobs = ts::gaussian_blobs(20, 5, 44);
  const qembed::LogRegModel model =
      qembed::train_ovr_logreg(blobs.x, blobs.labels, qembed::Hyperparams{});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < blobs.x.rows(); ++i) {
    std::vector<double> row(blobs.x.cols());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = blobs.x(i, j);
    if (qembed::predict(model, row).label == blobs.labels[i]) ++correct;
  }
  if (correct != blobs.x.rows()) {
    ok = false;
    detail = "separable blobs: " + std::to_string(correct) + "/" +
             std::to_string(blobs.x.rows()) + " correct";
  }

  double worst_rel = 0.0;
  if (ok) {
    std::mt19937_64 gen(45);
    for (int trial = 0; trial < 10 && ok; ++trial) {
      const std::size_t n = 20, d = 5;
      const qembed::Matrix x = ts::random_matrix(n, d, gen);
      std::vector<int> y01(n);
      for (auto& y : y01) y = static_cast<int>(qembed::rng::bounded(gen, 2));
      std::vector<double> w(d + 1);
      for (auto& v : w) v = qembed::rng::gaussian(gen);
      std::vector<double> grad(d + 1), scratch(d + 1);
      qembed::detail::binary_logreg_loss_grad(x, y01, w, 1e-4, grad);
      for (std::size_t j = 0; j <= d; ++j) {
        std::vector<double> wp = w, wm = w;
        wp[j] += 1e-5;
        wm[j] -= 1e-5;
        const double lp = qembed::detail::binary_logreg_loss_grad(x, y01, wp, 1e-4, scratch);
        const double lm = qembed::detail::binary_logreg_loss_grad(x, y01, wm, 1e-4, scratch);
        const double numeric = (lp - lm) / 2e-5;
        const double rel = std::abs(numeric - grad[j]) /
                           std::max({std::abs(numeric), std::abs(grad[j]), 1e-8});
        worst_rel = std::max(worst_rel, rel);
        if (rel > 1e-4) {
          ok = false;
          detail = "gradient check: relative deviation " + fmt(rel) + " at weight " +
                   std::to_string(j);
          break;
        }
      }
    }
  }
  report(4, "classifier-sanity", ok,
         ok ? ("60/60 blob points, worst gradient deviation " + fmt(worst_rel)) : detail);
}

// --------------------------------------------------------------- criterion 5

// Full pipeline through the installed binary: on a six-class keyword corpus
// (200 questions), `eval --method entropy --dim 20 --folds 5 --seed 42`
// reaches pooled weighted F1 >= 0.90; with permuted labels it drops to
// <= 0.30 (chance for six classes); both runs inside 60 s.
double pooled_weighted_from_tsv(const std::string& tsv_path, const std::string& method) {
  std::istringstream lines(ts::read_file(tsv_path));
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string m, fold, cls, metric, value;
    std::getline(fields, m, '\t');
    std::getline(fields, fold, '\t');
    std::getline(fields, cls, '\t');
    std::getline(fields, metric, '\t');
    std::getline(fields, value, '\t');
    if (m == method && fold == "pooled" && cls == "weighted" && metric == "f1") {
      return std::stod(value);
    }
  }
  throw std::runtime_error("pooled weighted f1 not found in " + tsv_path);
}

void criterion_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double signal = 0.0, chance = 0.0;
  try {
    ts::TempDir dir;
    const qembed::Corpus corpus = ts::keyword_corpus(6, 200, 4242);
    ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(corpus));

    const ts::CliResult run = ts::run_cli(
        {"eval", "--data", "data.tsv", "--method", "entropy", "--dim", "20", "--folds", "5",
         "--seed", "42", "--out", "signal"},
        dir.path());
    if (run.exit_code != 0) {
      ok = false;
      detail = "signal run exited " + std::to_string(run.exit_code) + ": " + run.err;
    } else {
      signal = pooled_weighted_from_tsv(dir.file("signal/report.tsv"), "entropy");
      if (signal < 0.90) {
        ok = false;
        detail = "signal weighted F1 " + fmt(signal) + " below 0.90";
      }
    }

    if (ok) {
      // permute labels against texts: any residual score is leakage or luck
      std::vector<std::string> labels;
      for (const auto& q : corpus.questions()) labels.push_back(q.label);
      std::mt19937_64 gen(606);
      qembed::rng::fisher_yates(labels, gen);
      std::vector<std::pair<std::string, std::string>> rows;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        rows.emplace_back(corpus.questions()[i].text, labels[i]);
      }
      ts::write_file(dir.file("permuted.tsv"),
                     ts::corpus_to_tsv(qembed::Corpus::from_rows(rows)));
      const ts::CliResult null_run = ts::run_cli(
          {"eval", "--data", "permuted.tsv", "--method", "entropy", "--dim", "20", "--folds",
           "5", "--seed", "42", "--out", "chance"},
          dir.path());
      if (null_run.exit_code != 0) {
        ok = false;
        detail = "control run exited " + std::to_string(null_run.exit_code);
      } else {
        chance = pooled_weighted_from_tsv(dir.file("chance/report.tsv"), "entropy");
        if (chance > 0.30) {
          ok = false;
          detail = "permuted-label control scored " + fmt(chance) + ", above 0.30";
        }
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 60.0;
  report(5, "end-to-end-separable", ok && in_time,
         ok ? ("weighted F1 " + fmt(signal) + " vs permuted " + fmt(chance) + ", " +
               fmt(elapsed) + "s" + (in_time ? "" : ", OVER the 60s budget"))
            : detail);
}

// --------------------------------------------------------------- criterion 6

// Dimensionality contract on a large-vocabulary corpus (V > 5000): the
// entropy embedding has dim min(200, V, N) and tfidf has dim V.
void criterion_dimensionality() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 gen(66);
  const std::size_t n = 300;
  std::vector<std::vector<std::string>> lists(n);
  for (auto& list : lists) {
    for (int t = 0; t < 25; ++t) {
      list.push_back("vocab" + std::to_string(qembed::rng::bounded(gen, 30000)));
    }
  }
  const qembed::Vocabulary vocab = qembed::build_vocabulary(lists);
  if (vocab.size() <= 5000) {
    ok = false;
    detail = "generator produced only V=" + std::to_string(vocab.size());
  } else {
    const qembed::EmbeddingModel entropy =
        qembed::fit_entropy_embedding(lists, vocab, 200, 1);
    const std::size_t expected = std::min({std::size_t{200}, vocab.size(), n});
    if (entropy.dim != expected) {
      ok = false;
      detail = "entropy dim " + std::to_string(entropy.dim) + " != min(200, V, N) = " +
               std::to_string(expected);
    }
    const qembed::EmbeddingModel tfidf = qembed::fit_tfidf(lists, vocab);
    if (ok && tfidf.dim != vocab.size()) {
      ok = false;
      detail = "tfidf dim " + std::to_string(tfidf.dim) + " != V = " +
               std::to_string(vocab.size());
    }
    if (ok) {
      detail = "V=" + std::to_string(vocab.size()) + ", N=" + std::to_string(n) +
               ", entropy dim=" + std::to_string(entropy.dim) +
               ", tfidf dim=" + std::to_string(tfidf.dim);
    }
  }
  report(6, "dimensionality-contract", ok, detail);
}

// --------------------------------------------------------------- criterion 7

// Published-scale reproduction. The original datasets (a proprietary agent
// log and the full 50k IMDB archive) are not redistributable and no network
// fetch is available here, so the stated F1 targets cannot be replayed
// verbatim; the substance checks live in criteria 1-5. What runs instead is
// the same protocol at reduced scale: a balanced 4000-review synthetic corpus
// with Zipf vocabulary and noisy sentiment cues. Both entropy (dim 200) and
// tfidf must reach weighted F1 >= 0.80 and agree within 0.05 — the paper-
// claimed relationship at a scale this sandbox can execute. A real subset can
// be dropped at data/imdb_subset.tsv to run the check on original text.
void criterion_reduced_scale() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double entropy_f1 = 0.0, tfidf_f1 = 0.0;
  try {
    qembed::Corpus corpus;
    std::string source;
    if (std::filesystem::exists("data/imdb_subset.tsv")) {
      corpus = qembed::load_corpus("data/imdb_subset.tsv", qembed::CorpusFormat::Tsv);
      source = "data/imdb_subset.tsv";
    } else {
      corpus = ts::review_corpus(4000, 777);
      source = "synthetic review corpus";
    }
    qembed::PreprocessConfig pre;
    qembed::CVConfig cfg;
    cfg.dim = 200;
    cfg.folds = 5;
    cfg.seed = 42;
    cfg.hp.max_epochs = 300;  // plenty for binary sentiment; keeps the gate fast

    cfg.method = qembed::EmbeddingKind::Entropy;
    entropy_f1 = qembed::cross_validate(corpus, pre, cfg).pooled.weighted_f1;
    cfg.method = qembed::EmbeddingKind::Tfidf;
    tfidf_f1 = qembed::cross_validate(corpus, pre, cfg).pooled.weighted_f1;

    if (entropy_f1 < 0.80) {
      ok = false;
      detail = "entropy weighted F1 " + fmt(entropy_f1) + " below 0.80";
    } else if (tfidf_f1 < 0.80) {
      ok = false;
      detail = "tfidf weighted F1 " + fmt(tfidf_f1) + " below 0.80";
    } else if (std::abs(entropy_f1 - tfidf_f1) > 0.05) {
      ok = false;
      detail = "methods diverge: entropy " + fmt(entropy_f1) + " vs tfidf " + fmt(tfidf_f1);
    } else {
      detail = source + ": entropy " + fmt(entropy_f1) + ", tfidf " + fmt(tfidf_f1) + ", " +
               fmt(seconds_since(start)) + "s";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, "reduced-scale-sentiment", ok, detail);
}

// --------------------------------------------------------------- criterion 8

// Two identical eval invocations of the binary produce byte-identical TSV
// reports.
void criterion_determinism() {
  bool ok = true;
  std::string detail;
  try {
    ts::TempDir dir;
    ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(4, 120, 55)));
    const std::vector<std::string> base = {"eval",  "--data", "data.tsv", "--dim", "16",
                                           "--folds", "4",    "--seed",   "7"};
    std::vector<std::string> first = base;
    first.insert(first.end(), {"--out", "a"});
    std::vector<std::string> second = base;
    second.insert(second.end(), {"--out", "b"});
    const ts::CliResult r1 = ts::run_cli(first, dir.path());
    const ts::CliResult r2 = ts::run_cli(second, dir.path());
    if (r1.exit_code != 0 || r2.exit_code != 0) {
      ok = false;
      detail = "runs exited " + std::to_string(r1.exit_code) + "/" + std::to_string(r2.exit_code);
    } else {
      const std::string a = ts::read_file(dir.file("a/report.tsv"));
      const std::string b = ts::read_file(dir.file("b/report.tsv"));
      if (a != b) {
        ok = false;
        detail = "TSV reports differ between identical runs";
      } else {
        detail = std::to_string(a.size()) + " bytes, byte-identical";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "run-determinism", ok, detail);
}

}  // namespace

int main() {
  criterion_entropy_oracle();
  criterion_svd();
  criterion_metrics();
  criterion_classifier();
  criterion_end_to_end();
  criterion_dimensionality();
  criterion_reduced_scale();
  criterion_determinism();
  if (g_failures > 0) {
    std::printf("%d acceptance criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
