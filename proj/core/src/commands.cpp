#include "qembed/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "qembed/corpus.hpp"
#include "qembed/errors.hpp"
#include "qembed/evaluate.hpp"
#include "qembed/preprocess.hpp"
#include "qembed/report.hpp"
#include "textio.hpp"

namespace qembed {

namespace {

namespace fs = std::filesystem;

int run_guarded(const char* command, int (*body)(const RunConfig&), const RunConfig& config) {
  try {
    return body(config);
  } catch (const ConfigError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << command << ": unexpected error: " << e.what() << "\n";
    return 1;
  }
}

void ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) throw ConfigError("output directory must not be empty");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create output directory " + out_dir + ": " + ec.message());
}

PreprocessConfig make_preprocess(const RunConfig& config) {
  PreprocessConfig pre;
  if (!config.stopwords_path.empty()) pre.stopwords = load_stopword_file(config.stopwords_path);
  if (!config.rules_path.empty()) pre.rules = load_rules_file(config.rules_path);
  pre.drop_digit_tokens = !config.keep_digits;
  if (!config.script.empty()) {
    pre.drop_foreign_script_tokens = true;
    pre.allowed_script = uni::script_from_name(config.script);
  }
  return pre;
}

CVConfig make_cv_config(const RunConfig& config, const std::string& method) {
  CVConfig cv;
  cv.method = kind_from_name(method);
  cv.dim = config.dim;
  cv.window = config.window;
  cv.folds = config.folds;
  cv.seed = config.seed;
  cv.strategy = config.stratified ? FoldStrategy::Stratified : FoldStrategy::PlainShuffled;
  cv.fill = config.fill;
  cv.multiset_average = config.multiset;
  cv.external_vectors_path = config.vectors_path;
  cv.hp = config.hp;
  if (cv.method == EmbeddingKind::External && cv.external_vectors_path.empty()) {
    throw ConfigError("method 'external' needs --vectors <file>");
  }
  return cv;
}

EmbeddingModel fit_full_model(const std::vector<std::vector<std::string>>& token_lists,
                              const RunConfig& config, const std::string& method) {
  const EmbeddingKind kind = kind_from_name(method);
  switch (kind) {
    case EmbeddingKind::Entropy: {
      EntropyOptions options;
      options.fill = config.fill;
      options.multiset_average = config.multiset;
      return fit_entropy_embedding(token_lists, build_vocabulary(token_lists), config.dim,
                                   config.seed, options);
    }
    case EmbeddingKind::Tfidf:
      return fit_tfidf(token_lists, build_vocabulary(token_lists));
    case EmbeddingKind::PmiVsm:
      return fit_pmi_vsm(token_lists, build_vocabulary(token_lists), config.window, config.dim,
                         config.seed, config.multiset);
    case EmbeddingKind::External: {
      if (config.vectors_path.empty()) throw ConfigError("method 'external' needs --vectors <file>");
      EmbeddingModel model = load_external_vectors(config.vectors_path);
      model.multiset_average = config.multiset;
      return model;
    }
  }
  throw ConfigError("invalid embedding method");
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = io::open_output(path);
  out << content;
  if (!out) throw DataError("failed writing " + path);
}

std::vector<std::vector<std::string>> preprocess_all(const std::vector<std::string>& texts,
                                                     const PreprocessConfig& pre) {
  std::vector<std::vector<std::string>> lists;
  lists.reserve(texts.size());
  for (const auto& text : texts) lists.push_back(preprocess_question(text, pre));
  return lists;
}

int eval_body(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("eval needs --data <file>");
  const Corpus corpus = load_corpus(config.data_path, format_from_name(config.format));
  const PreprocessConfig pre = make_preprocess(config);

  std::vector<std::string> methods{config.method};
  for (const auto& extra : config.compare) {
    if (std::find(methods.begin(), methods.end(), extra) == methods.end()) {
      methods.push_back(extra);
    }
  }

  std::vector<MethodRun> runs;
  runs.reserve(methods.size());
  for (const auto& method : methods) {
    const CVConfig cv = make_cv_config(config, method);
    runs.push_back({method, cross_validate(corpus, pre, cv)});
  }

  ensure_out_dir(config.out_dir);
  const std::string text = render_text_report(corpus, runs);
  write_text_file((fs::path(config.out_dir) / "report.txt").string(), text);
  write_text_file((fs::path(config.out_dir) / "report.tsv").string(), render_tsv_report(runs));
  std::cout << text;
  return kExitOk;
}

int train_body(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("train needs --data <file>");
  const Corpus corpus = load_corpus(config.data_path, format_from_name(config.format));
  const PreprocessConfig pre = make_preprocess(config);

  std::vector<std::vector<std::string>> token_lists;
  std::vector<std::string> labels;
  token_lists.reserve(corpus.size());
  labels.reserve(corpus.size());
  for (const auto& q : corpus.questions()) {
    token_lists.push_back(preprocess_question(q.text, pre));
    labels.push_back(q.label);
  }

  const EmbeddingModel model = fit_full_model(token_lists, config, config.method);
  Matrix x(corpus.size(), model.kind == EmbeddingKind::Tfidf ? model.vocab.size() : model.dim,
           0.0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const QuestionVector qv = embed_question(model, token_lists[i]);
    for (std::size_t j = 0; j < qv.values.size(); ++j) x(i, j) = qv.values[j];
  }
  Hyperparams hp = config.hp;
  hp.seed = config.seed;
  const LogRegModel clf = train_ovr_logreg(x, labels, hp);

  ensure_out_dir(config.out_dir);
  save_embedding_model((fs::path(config.out_dir) / kEmbeddingModelFile).string(), model);
  save_logreg_model((fs::path(config.out_dir) / kClassifierModelFile).string(), clf);
  save_preprocess_config((fs::path(config.out_dir) / kPreprocessConfigFile).string(), pre);
  std::cout << "model written to " << config.out_dir << "\n";
  return kExitOk;
}

// The three files train writes, reloaded as one bundle.
struct ModelBundle {
  PreprocessConfig pre;
  EmbeddingModel embedding;
};

ModelBundle load_bundle(const std::string& model_dir) {
  if (model_dir.empty()) throw ConfigError("a trained model directory is required (--model)");
  ModelBundle bundle;
  bundle.pre = load_preprocess_config((fs::path(model_dir) / kPreprocessConfigFile).string());
  bundle.embedding = load_embedding_model((fs::path(model_dir) / kEmbeddingModelFile).string());
  return bundle;
}

int predict_body(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("predict needs --data <file>");
  ModelBundle bundle = load_bundle(config.model_dir);
  const LogRegModel clf =
      load_logreg_model((fs::path(config.model_dir) / kClassifierModelFile).string());
  const std::size_t embed_dim = bundle.embedding.kind == EmbeddingKind::Tfidf
                                    ? bundle.embedding.vocab.size()
                                    : bundle.embedding.dim;
  if (clf.feature_dim() != embed_dim) {
    throw DataError("model files disagree: classifier expects dimension " +
                    std::to_string(clf.feature_dim()) + ", embedding produces " +
                    std::to_string(embed_dim));
  }

  const auto texts = load_texts(config.data_path, format_from_name(config.format));
  for (const auto& text : texts) {
    const auto tokens = preprocess_question(text, bundle.pre);
    const QuestionVector qv = embed_question(bundle.embedding, tokens);
    const Prediction p = predict(clf, qv.values);
    double best = 0.0;
    for (std::size_t c = 0; c < clf.classes.size(); ++c) {
      if (clf.classes[c] == p.label) best = p.scores[c];
    }
    char score[32];
    std::snprintf(score, sizeof(score), "%.6f", best);
    std::cout << p.label << "\t" << score << "\n";
  }
  return kExitOk;
}

int embed_body(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("embed needs --data <file>");
  ModelBundle bundle = load_bundle(config.model_dir);
  const auto texts = load_texts(config.data_path, format_from_name(config.format));

  const std::size_t dim = bundle.embedding.kind == EmbeddingKind::Tfidf
                              ? bundle.embedding.vocab.size()
                              : bundle.embedding.dim;
  Matrix vectors(texts.size(), dim, 0.0);
  std::vector<std::string> names;
  names.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto tokens = preprocess_question(texts[i], bundle.pre);
    const QuestionVector qv = embed_question(bundle.embedding, tokens);
    for (std::size_t j = 0; j < qv.values.size(); ++j) vectors(i, j) = qv.values[j];
    names.push_back(std::to_string(i));
  }

  ensure_out_dir(config.out_dir);
  const std::string path = (fs::path(config.out_dir) / "questions.vec").string();
  write_word_vectors(path, names, vectors);
  std::cout << "question vectors written to " << path << "\n";
  return kExitOk;
}

int project_body(const RunConfig& config) {
  if (config.data_path.empty()) throw ConfigError("project needs --data <file>");
  const auto texts = load_texts(config.data_path, format_from_name(config.format));
  const PreprocessConfig pre = make_preprocess(config);
  const auto token_lists = preprocess_all(texts, pre);

  const EmbeddingModel model = fit_full_model(token_lists, config, config.method);
  std::vector<QuestionVector> vectors;
  vectors.reserve(texts.size());
  for (const auto& tokens : token_lists) vectors.push_back(embed_question(model, tokens));
  const auto coords = project_2d(vectors, config.seed);

  ensure_out_dir(config.out_dir);
  const std::string path = (fs::path(config.out_dir) / "projection.tsv").string();
  auto out = io::open_output(path);
  out << "id\tx\ty\n";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out << i << "\t" << io::format_double(coords[i][0]) << "\t" << io::format_double(coords[i][1])
        << "\n";
  }
  if (!out) throw DataError("failed writing " + path);
  std::cout << "projection written to " << path << "\n";
  return kExitOk;
}

}  // namespace

int cmd_eval(const RunConfig& config) { return run_guarded("eval", eval_body, config); }
int cmd_train(const RunConfig& config) { return run_guarded("train", train_body, config); }
int cmd_predict(const RunConfig& config) { return run_guarded("predict", predict_body, config); }
int cmd_embed(const RunConfig& config) { return run_guarded("embed", embed_body, config); }
int cmd_project(const RunConfig& config) { return run_guarded("project", project_body, config); }

}  // namespace qembed
