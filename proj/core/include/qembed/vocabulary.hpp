#ifndef QEMBED_VOCABULARY_HPP
#define QEMBED_VOCABULARY_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "qembed/errors.hpp"

namespace qembed {

// Dense word <-> index bijection. Fitted vocabularies are code-point sorted;
// external vector files keep their row order.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary from_ordered_unique(std::vector<std::string> words) {
    Vocabulary v;
    v.words_ = std::move(words);
    v.index_.reserve(v.words_.size());
    for (std::size_t i = 0; i < v.words_.size(); ++i) {
      const bool inserted = v.index_.emplace(v.words_[i], static_cast<int>(i)).second;
      if (!inserted) throw ConfigError("duplicate word in vocabulary: " + v.words_[i]);
    }
    return v;
  }

  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }

  // -1 when absent.
  int index_of(const std::string& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace qembed

#endif  // QEMBED_VOCABULARY_HPP
