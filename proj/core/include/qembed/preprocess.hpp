#ifndef QEMBED_PREPROCESS_HPP
#define QEMBED_PREPROCESS_HPP

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "qembed/unicode.hpp"
#include "qembed/vocabulary.hpp"

namespace qembed {

// Text substitution collapsing spelling variants to one canonical token
// before tokenization. '*' in the pattern matches a greedy run of non-space
// characters; everything else matches literally. The replacement must not
// contain whitespace.
struct SubstitutionRule {
  std::string pattern;
  std::string replacement;
};

using Normalizer = std::function<std::string(const std::string&)>;

// Token -> token functions by name. "lowercase" (default) and "identity" are
// built in; language-specific normalizers (stemmers, lemma lookups) plug in
// through register_normalizer.
Normalizer normalizer_by_name(const std::string& name);  // throws ConfigError
void register_normalizer(const std::string& name, Normalizer fn);

struct PreprocessConfig {
  std::vector<SubstitutionRule> rules;
  std::unordered_set<std::string> stopwords;         // stored lowercase
  std::unordered_set<std::string> custom_stopwords;  // stored lowercase
  bool drop_digit_tokens = true;
  bool drop_foreign_script_tokens = false;
  uni::Script allowed_script = uni::Script::None;
  std::string normalizer = "lowercase";
};

// Single left-to-right pass; at each position the longest matching pattern
// wins (ties: earliest rule). Replacements are emitted verbatim and never
// rescanned.
std::string apply_substitution_rules(const std::string& text,
                                     const std::vector<SubstitutionRule>& rules);

// Maximal runs of letter/digit code points; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// rules -> tokenize -> filter -> normalize. Digit and script filters look at
// the raw token; stopword checks look at the lowercased normalized form.
std::vector<std::string> preprocess_question(const std::string& text,
                                             const PreprocessConfig& config);

// Distinct tokens in code-point order, indexed 0..V-1. Errors when every
// token list is empty.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists);

// Stopword file: one token per line, UTF-8, '#' comments, blank lines ignored.
std::unordered_set<std::string> load_stopword_file(const std::string& path);

// Rules file: "pattern\treplacement" per line, '#' comments.
std::vector<SubstitutionRule> load_rules_file(const std::string& path);

// Lossless round trip of a full PreprocessConfig, written next to trained
// models so prediction preprocesses exactly like training did.
void save_preprocess_config(const std::string& path, const PreprocessConfig& config);
PreprocessConfig load_preprocess_config(const std::string& path);

}  // namespace qembed

#endif  // QEMBED_PREPROCESS_HPP
