#ifndef QEMBED_COMMANDS_HPP
#define QEMBED_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qembed/classify.hpp"
#include "qembed/embed.hpp"

namespace qembed {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags or option combinations
inline constexpr int kExitData = 3;     // unreadable/malformed data or model files
inline constexpr int kExitNumeric = 4;  // numeric failure

// Everything a subcommand needs, resolved from flags (and an optional config
// file) by the CLI frontend.
struct RunConfig {
  std::string data_path;
  std::string format = "tsv";

  std::string stopwords_path;
  std::string rules_path;
  bool keep_digits = false;
  std::string script;  // empty = no foreign-script filter

  std::string method = "entropy";
  std::size_t dim = 200;
  std::size_t window = 2;
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  bool stratified = false;
  double fill = kEntropySentinel;
  bool multiset = false;
  std::string vectors_path;           // external method input
  std::vector<std::string> compare;   // additional methods for eval

  std::string out_dir = "out";
  std::string model_dir;              // trained model location for predict

  Hyperparams hp;
};

// Model directory layout written by train and read by predict.
inline constexpr const char* kEmbeddingModelFile = "embedding.model";
inline constexpr const char* kClassifierModelFile = "classifier.model";
inline constexpr const char* kPreprocessConfigFile = "preprocess.conf";

// Each command validates its config, runs, writes artifacts under
// config.out_dir, and returns an exit code (never throws).
int cmd_eval(const RunConfig& config);
int cmd_train(const RunConfig& config);
int cmd_predict(const RunConfig& config);
int cmd_embed(const RunConfig& config);
int cmd_project(const RunConfig& config);

}  // namespace qembed

#endif  // QEMBED_COMMANDS_HPP
