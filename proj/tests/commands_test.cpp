#include <doctest.h>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "qembed/commands.hpp"
#include "qembed/embed.hpp"
#include "qembed/preprocess.hpp"
#include "testsupport.hpp"

using namespace qembed;

namespace {

// Captures std::cout for the duration of one command call.
class CoutCapture {
 public:
  CoutCapture() : old_(std::cout.rdbuf(buffer_.rdbuf())) {}
  ~CoutCapture() { std::cout.rdbuf(old_); }
  std::string text() const { return buffer_.str(); }

 private:
  std::ostringstream buffer_;
  std::streambuf* old_;
};

class CerrCapture {
 public:
  CerrCapture() : old_(std::cerr.rdbuf(buffer_.rdbuf())) {}
  ~CerrCapture() { std::cerr.rdbuf(old_); }
  std::string text() const { return buffer_.str(); }

 private:
  std::ostringstream buffer_;
  std::streambuf* old_;
};

RunConfig base_config(const ts::TempDir& dir, const std::string& data_name) {
  RunConfig config;
  config.data_path = dir.file(data_name);
  config.out_dir = dir.file("out");
  config.dim = 10;
  config.folds = 4;
  config.seed = 42;
  return config;
}

}  // namespace

TEST_CASE("cmd_eval writes both report files and is TSV-deterministic") {
  ts::TempDir dir;
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(3, 60, 17)));
  RunConfig config = base_config(dir, "data.tsv");

  int code;
  std::string first_tsv;
  {
    CoutCapture cap;
    code = cmd_eval(config);
    CHECK(cap.text().find("Pooled") != std::string::npos);
  }
  CHECK(code == kExitOk);
  CHECK(std::filesystem::exists(dir.file("out/report.txt")));
  CHECK(std::filesystem::exists(dir.file("out/report.tsv")));
  first_tsv = ts::read_file(dir.file("out/report.tsv"));
  CHECK(first_tsv.find("method\tfold\tclass\tmetric\tvalue") == 0);

  {
    CoutCapture cap;
    code = cmd_eval(config);
  }
  CHECK(code == kExitOk);
  CHECK(ts::read_file(dir.file("out/report.tsv")) == first_tsv);
}

TEST_CASE("cmd_eval compares methods side by side") {
  ts::TempDir dir;
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(3, 60, 23)));
  RunConfig config = base_config(dir, "data.tsv");
  config.compare = {"tfidf"};

  std::string stdout_text;
  {
    CoutCapture cap;
    CHECK(cmd_eval(config) == kExitOk);
    stdout_text = cap.text();
  }
  CHECK(stdout_text.find("method=entropy") != std::string::npos);
  CHECK(stdout_text.find("method=tfidf") != std::string::npos);
  const std::string tsv = ts::read_file(dir.file("out/report.tsv"));
  CHECK(tsv.find("entropy\t") != std::string::npos);
  CHECK(tsv.find("tfidf\t") != std::string::npos);
}

TEST_CASE("cmd_eval maps error families onto exit codes") {
  ts::TempDir dir;
  SUBCASE("missing data file is a data error") {
    RunConfig config = base_config(dir, "absent.tsv");
    CerrCapture cap;
    CHECK(cmd_eval(config) == kExitData);
  }
  SUBCASE("external method without vectors is a usage error") {
    ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(2, 20, 3)));
    RunConfig config = base_config(dir, "data.tsv");
    config.method = "external";
    CerrCapture cap;
    CHECK(cmd_eval(config) == kExitUsage);
  }
  SUBCASE("unknown format name is a usage error") {
    ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(2, 20, 3)));
    RunConfig config = base_config(dir, "data.tsv");
    config.format = "parquet";
    CerrCapture cap;
    CHECK(cmd_eval(config) == kExitUsage);
  }
  SUBCASE("unknown method name is a usage error") {
    ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(ts::keyword_corpus(2, 20, 3)));
    RunConfig config = base_config(dir, "data.tsv");
    config.method = "fasttext";
    CerrCapture cap;
    CHECK(cmd_eval(config) == kExitUsage);
  }
}

TEST_CASE("train, then predict the training set back") {
  ts::TempDir dir;
  const Corpus corpus = ts::keyword_corpus(3, 45, 5);
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(corpus));
  RunConfig train_config = base_config(dir, "data.tsv");
  train_config.out_dir = dir.file("model");
  {
    CoutCapture cap;
    REQUIRE(cmd_train(train_config) == kExitOk);
    CHECK(cap.text().find("model written") != std::string::npos);
  }
  CHECK(std::filesystem::exists(dir.file("model") + "/" + kEmbeddingModelFile));
  CHECK(std::filesystem::exists(dir.file("model") + "/" + kClassifierModelFile));
  CHECK(std::filesystem::exists(dir.file("model") + "/" + kPreprocessConfigFile));

  RunConfig predict_config = base_config(dir, "data.tsv");
  predict_config.model_dir = dir.file("model");
  std::string output;
  {
    CoutCapture cap;
    REQUIRE(cmd_predict(predict_config) == kExitOk);
    output = cap.text();
  }
  // one "label<TAB>score" line per question, all labels correct on train data
  std::istringstream lines(output);
  std::string line;
  std::size_t row = 0;
  while (std::getline(lines, line)) {
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    CHECK(line.substr(0, tab) == corpus.questions()[row].label);
    const double score = std::stod(line.substr(tab + 1));
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
    ++row;
  }
  CHECK(row == corpus.size());

  SUBCASE("predict without a model directory is a usage error") {
    RunConfig config = base_config(dir, "data.tsv");
    CerrCapture cap;
    CHECK(cmd_predict(config) == kExitUsage);
  }
  SUBCASE("a corrupt model header is a data error") {
    ts::write_file(dir.file("model") + "/" + kEmbeddingModelFile, "not a model\n");
    CerrCapture cap;
    CHECK(cmd_predict(predict_config) == kExitData);
  }
}

TEST_CASE("predict rejects model files that disagree on the dimension") {
  ts::TempDir dir;
  const Corpus corpus = ts::keyword_corpus(2, 30, 8);
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(corpus));

  RunConfig a = base_config(dir, "data.tsv");
  a.out_dir = dir.file("model_a");
  a.dim = 6;
  RunConfig b = base_config(dir, "data.tsv");
  b.out_dir = dir.file("model_b");
  b.dim = 9;
  {
    CoutCapture cap;
    REQUIRE(cmd_train(a) == kExitOk);
    REQUIRE(cmd_train(b) == kExitOk);
  }
  // graft B's classifier onto A's embedding: dimensions disagree
  std::filesystem::copy_file(dir.file("model_b") + "/" + kClassifierModelFile,
                             dir.file("model_a") + "/" + kClassifierModelFile,
                             std::filesystem::copy_options::overwrite_existing);
  RunConfig predict_config = base_config(dir, "data.tsv");
  predict_config.model_dir = dir.file("model_a");
  CerrCapture cap;
  CHECK(cmd_predict(predict_config) == kExitData);
}

TEST_CASE("cmd_embed exports vectors that match direct embedding") {
  ts::TempDir dir;
  const Corpus corpus = ts::keyword_corpus(2, 24, 13);
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(corpus));
  RunConfig train_config = base_config(dir, "data.tsv");
  train_config.out_dir = dir.file("model");
  {
    CoutCapture cap;
    REQUIRE(cmd_train(train_config) == kExitOk);
  }

  RunConfig embed_config = base_config(dir, "data.tsv");
  embed_config.model_dir = dir.file("model");
  embed_config.out_dir = dir.file("embed_out");
  {
    CoutCapture cap;
    REQUIRE(cmd_embed(embed_config) == kExitOk);
  }
  const std::string vec_path = dir.file("embed_out/questions.vec");
  REQUIRE(std::filesystem::exists(vec_path));

  const EmbeddingModel exported = load_external_vectors(vec_path);
  REQUIRE(exported.vocab.size() == corpus.size());

  const EmbeddingModel model =
      load_embedding_model(dir.file("model") + "/" + kEmbeddingModelFile);
  const PreprocessConfig pre =
      load_preprocess_config(dir.file("model") + "/" + kPreprocessConfigFile);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const QuestionVector qv =
        embed_question(model, preprocess_question(corpus.questions()[i].text, pre));
    for (std::size_t j = 0; j < model.dim; ++j) {
      CHECK(std::abs(exported.word_vectors(i, j) - qv.values[j]) < 1e-9);
    }
  }
}

TEST_CASE("cmd_project writes one 2-D point per question, deterministically") {
  ts::TempDir dir;
  const Corpus corpus = ts::keyword_corpus(3, 36, 77);
  ts::write_file(dir.file("data.tsv"), ts::corpus_to_tsv(corpus));
  RunConfig config = base_config(dir, "data.tsv");
  config.dim = 8;
  {
    CoutCapture cap;
    REQUIRE(cmd_project(config) == kExitOk);
  }
  const std::string path = dir.file("out/projection.tsv");
  REQUIRE(std::filesystem::exists(path));
  const std::string first = ts::read_file(path);
  CHECK(first.find("id\tx\ty") == 0);
  std::size_t lines = 0;
  for (char c : first) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == corpus.size() + 1);  // header + one row per question

  {
    CoutCapture cap;
    REQUIRE(cmd_project(config) == kExitOk);
  }
  CHECK(ts::read_file(path) == first);
}

TEST_CASE("a corpus with no co-occurrence at all fails numerically under pmi-vsm") {
  ts::TempDir dir;
  std::string tsv = "text\tlabel\n";
  for (int i = 0; i < 8; ++i) {
    tsv += "solo" + ts::letters(static_cast<std::size_t>(i)) + "\t" + (i % 2 == 0 ? "a" : "b") +
           "\n";
  }
  ts::write_file(dir.file("data.tsv"), tsv);
  RunConfig config = base_config(dir, "data.tsv");
  config.method = "pmi-vsm";
  config.dim = 2;
  config.folds = 4;
  CerrCapture cap;
  CHECK(cmd_eval(config) == kExitNumeric);
  CHECK(cap.text().find("eval:") != std::string::npos);
}
