#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "qembed/classify.hpp"
#include "qembed/embed.hpp"
#include "qembed/evaluate.hpp"
#include "qembed/preprocess.hpp"
#include "qembed/rng.hpp"
#include "qembed/svd.hpp"

using namespace qembed;

namespace {

std::vector<std::vector<std::string>> synthetic_lists(std::size_t n, std::size_t pool,
                                                      std::size_t len, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<std::string>> lists(n);
  for (auto& list : lists) {
    for (std::size_t t = 0; t < len; ++t) {
      list.push_back("word" + std::to_string(rng::bounded(gen, pool)));
    }
  }
  return lists;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Matrix m(rows, cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng::gaussian(gen);
  }
  return m;
}

}  // namespace

static void BM_tokenize(benchmark::State& state) {
  PreprocessConfig pre;
  const std::string text =
      "How do I reset the лишний password token 42 for the staging environment";
  for (auto _ : state) {
    benchmark::DoNotOptimize(preprocess_question(text, pre));
  }
}
BENCHMARK(BM_tokenize);

static void BM_entropy_matrix(benchmark::State& state) {
  const auto lists = synthetic_lists(static_cast<std::size_t>(state.range(0)), 400, 12, 1);
  const Vocabulary vocab = build_vocabulary(lists);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_entropy_matrix(lists, vocab));
  }
}
BENCHMARK(BM_entropy_matrix)->Arg(100)->Arg(400);

static void BM_truncated_svd_exact(benchmark::State& state) {
  const Matrix m = random_matrix(200, 120, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_svd(m, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_truncated_svd_exact)->Arg(10)->Arg(50);

static void BM_truncated_svd_randomized(benchmark::State& state) {
  // above the exact-path cutoff with small k: exercises the range finder
  const Matrix m = random_matrix(600, 550, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_svd(m, 20, 7));
  }
}
BENCHMARK(BM_truncated_svd_randomized);

static void BM_fit_tfidf(benchmark::State& state) {
  const auto lists = synthetic_lists(500, 800, 12, 4);
  const Vocabulary vocab = build_vocabulary(lists);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_tfidf(lists, vocab));
  }
}
BENCHMARK(BM_fit_tfidf);

static void BM_train_logreg(benchmark::State& state) {
  const std::size_t n = 200, d = 20;
  Matrix x = random_matrix(n, d, 6);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % 3;
    x(i, c) += 6.0;  // separable shift keeps epochs meaningful
    labels.push_back("c" + std::to_string(c));
  }
  Hyperparams hp;
  hp.max_epochs = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_ovr_logreg(x, labels, hp));
  }
}
BENCHMARK(BM_train_logreg);

static void BM_classification_report(benchmark::State& state) {
  std::mt19937_64 gen(7);
  std::vector<std::string> classes;
  for (int c = 0; c < 6; ++c) classes.push_back("c" + std::to_string(c));
  std::vector<std::string> y_true, y_pred;
  for (int i = 0; i < 5000; ++i) {
    y_true.push_back(classes[rng::bounded(gen, classes.size())]);
    y_pred.push_back(classes[rng::bounded(gen, classes.size())]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(classification_report(y_true, y_pred, classes));
  }
}
BENCHMARK(BM_classification_report);

BENCHMARK_MAIN();
