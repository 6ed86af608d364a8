#ifndef QEMBED_CORPUS_HPP
#define QEMBED_CORPUS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qembed {

struct LabeledQuestion {
  std::size_t id;     // 0-based position in the source file
  std::string text;   // raw question, non-empty after trimming
  std::string label;
};

// Immutable labeled question set. Label order is first occurrence in the
// source, which fixes class indexing everywhere downstream.
class Corpus {
 public:
  // rows are (text, label) pairs in file order.
  static Corpus from_rows(const std::vector<std::pair<std::string, std::string>>& rows);

  const std::vector<LabeledQuestion>& questions() const { return questions_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return questions_.size(); }

 private:
  std::vector<LabeledQuestion> questions_;
  std::vector<std::string> labels_;
};

enum class CorpusFormat { Tsv, Csv };

CorpusFormat format_from_name(const std::string& name);  // "tsv" | "csv"

// TSV: UTF-8, tab delimiter, no quoting, header "text\tlabel".
// CSV: RFC 4180 quoting, header "text,label". Column order in the header may
// be swapped; missing or extra columns are rejected. Errors carry 1-based
// line numbers.
Corpus load_corpus(const std::string& path, CorpusFormat format);

// Same formats, but the label column is optional and ignored when present.
// Used by prediction, where inputs may be unlabeled.
std::vector<std::string> load_texts(const std::string& path, CorpusFormat format);

std::map<std::string, std::size_t> class_distribution(const Corpus& corpus);

// Classes whose count falls below half the mean class count, in corpus label
// order. Empty result means the distribution is roughly balanced.
std::vector<std::string> underrepresented_classes(const Corpus& corpus);

enum class FoldStrategy { PlainShuffled, Stratified };

struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;  // per-question fold index in [0, k)
  std::uint64_t seed = 0;
  FoldStrategy strategy = FoldStrategy::PlainShuffled;

  std::vector<std::vector<std::size_t>> fold_members() const;
};

// Deterministic function of (n, k, seed, strategy, labels). Plain shuffling
// ignores labels; stratified keeps per-class counts within one of each other
// across folds. Requires 2 <= k <= n.
FoldPlan split_folds(std::size_t n, const std::vector<std::string>& labels, std::size_t k,
                     std::uint64_t seed, FoldStrategy strategy);

}  // namespace qembed

#endif  // QEMBED_CORPUS_HPP
