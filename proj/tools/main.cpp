#include <string>

#include <CLI11.hpp>

#include "qembed/commands.hpp"

namespace {

void add_data_options(CLI::App* cmd, qembed::RunConfig& config) {
  cmd->add_option("--data", config.data_path, "Question file (TSV or CSV with a header)");
  cmd->add_option("--format", config.format, "Input format: tsv or csv")->capture_default_str();
}

void add_preprocess_options(CLI::App* cmd, qembed::RunConfig& config) {
  cmd->add_option("--stopwords", config.stopwords_path, "Stopword file, one word per line");
  cmd->add_option("--rules", config.rules_path, "Substitution rules file (pattern<TAB>replacement)");
  cmd->add_flag("--keep-digits", config.keep_digits, "Keep tokens containing digits");
  cmd->add_option("--script", config.script,
                  "Drop tokens with letters outside this script (e.g. latin, cyrillic)");
}

void add_method_options(CLI::App* cmd, qembed::RunConfig& config) {
  cmd->add_option("--method", config.method, "entropy | tfidf | pmi-vsm | external")
      ->capture_default_str();
  cmd->add_option("--dim", config.dim, "Target embedding dimension")->capture_default_str();
  cmd->add_option("--window", config.window, "Co-occurrence window radius (pmi-vsm)")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--fill", config.fill, "Entropy matrix value for absent words")
      ->capture_default_str();
  cmd->add_flag("--multiset", config.multiset,
                "Average duplicate words per occurrence instead of once");
  cmd->add_option("--vectors", config.vectors_path, "Word-vector file for --method external");
}

void add_train_options(CLI::App* cmd, qembed::RunConfig& config) {
  cmd->add_option("--l2", config.hp.l2, "L2 regularization strength")->capture_default_str();
  cmd->add_option("--learning-rate", config.hp.learning_rate, "Initial gradient step")
      ->capture_default_str();
  cmd->add_option("--max-epochs", config.hp.max_epochs, "Gradient descent epoch cap")
      ->capture_default_str();
  cmd->add_option("--tol", config.hp.tol, "Gradient-norm stopping threshold")
      ->capture_default_str();
}

void add_out_option(CLI::App* cmd, qembed::RunConfig& config) {
  cmd->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shannon-entropy question embeddings: evaluate, train and apply "
               "question classifiers over several vectorization methods"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file");
  app.set_version_flag("--version", "qembed 0.1.0");

  qembed::RunConfig config;

  CLI::App* eval = app.add_subcommand("eval", "Cross-validated evaluation with text/TSV reports");
  add_data_options(eval, config);
  add_preprocess_options(eval, config);
  add_method_options(eval, config);
  add_train_options(eval, config);
  add_out_option(eval, config);
  eval->add_option("--folds", config.folds, "Cross-validation fold count")->capture_default_str();
  eval->add_flag("--stratified", config.stratified,
                 "Per-class fold assignment instead of plain shuffling");
  eval->add_option("--compare", config.compare,
                   "Additional methods to evaluate side by side (comma separated)")
      ->delimiter(',');

  CLI::App* train = app.add_subcommand("train", "Fit an embedding and classifier, write model files");
  add_data_options(train, config);
  add_preprocess_options(train, config);
  add_method_options(train, config);
  add_train_options(train, config);
  add_out_option(train, config);

  CLI::App* predict = app.add_subcommand("predict", "Label questions with a trained model");
  add_data_options(predict, config);
  predict->add_option("--model", config.model_dir, "Directory written by train");

  CLI::App* embed = app.add_subcommand("embed", "Export question vectors from a trained model");
  add_data_options(embed, config);
  embed->add_option("--model", config.model_dir, "Directory written by train");
  add_out_option(embed, config);

  CLI::App* project = app.add_subcommand("project", "Fit and export 2D projection coordinates");
  add_data_options(project, config);
  add_preprocess_options(project, config);
  add_method_options(project, config);
  add_out_option(project, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qembed::kExitUsage;
  }

  if (eval->parsed()) return qembed::cmd_eval(config);
  if (train->parsed()) return qembed::cmd_train(config);
  if (predict->parsed()) return qembed::cmd_predict(config);
  if (embed->parsed()) return qembed::cmd_embed(config);
  if (project->parsed()) return qembed::cmd_project(config);
  return qembed::kExitUsage;
}
