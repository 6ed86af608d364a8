#include "qembed/preprocess.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "qembed/errors.hpp"
#include "qembed/unicode.hpp"
#include "textio.hpp"

namespace qembed {

namespace {

std::mutex g_normalizer_mutex;

std::unordered_map<std::string, Normalizer>& normalizer_registry() {
  static std::unordered_map<std::string, Normalizer> registry = {
      {"lowercase", [](const std::string& s) { return uni::lower_copy(s); }},
      {"identity", [](const std::string& s) { return s; }},
  };
  return registry;
}

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Match `pattern` against `text` starting at `pos`. '*' consumes a non-empty
// greedy run of non-space bytes, backtracking so the rest of the pattern can
// still match. Returns the matched length, or 0 if there is no match.
std::size_t match_at(const std::string& text, std::size_t pos, const std::string& pattern,
                     std::size_t p) {
  std::size_t t = pos;
  while (p < pattern.size()) {
    if (pattern[p] == '*') {
      std::size_t run_end = t;
      while (run_end < text.size() && !is_space_byte(text[run_end])) ++run_end;
      if (run_end == t) return 0;  // '*' must consume at least one byte
      for (std::size_t cut = run_end; cut > t; --cut) {
        const std::size_t rest = match_at(text, cut, pattern, p + 1);
        if (rest > 0 || p + 1 == pattern.size()) {
          if (p + 1 == pattern.size() && cut != run_end) continue;  // trailing '*' is greedy
          return (cut - pos) + rest;
        }
      }
      return 0;
    }
    if (t >= text.size() || text[t] != pattern[p]) return 0;
    ++t;
    ++p;
  }
  return t - pos;
}

}  // namespace

Normalizer normalizer_by_name(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_normalizer_mutex);
  auto& registry = normalizer_registry();
  auto it = registry.find(name);
  if (it == registry.end()) throw ConfigError("unknown normalizer: " + name);
  return it->second;
}

void register_normalizer(const std::string& name, Normalizer fn) {
  if (name.empty()) throw ConfigError("normalizer name must be non-empty");
  if (!fn) throw ConfigError("normalizer function must be callable");
  std::lock_guard<std::mutex> lock(g_normalizer_mutex);
  normalizer_registry()[name] = std::move(fn);
}

std::string apply_substitution_rules(const std::string& text,
                                     const std::vector<SubstitutionRule>& rules) {
  if (rules.empty()) return text;
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t best_len = 0;
    const SubstitutionRule* best = nullptr;
    for (const auto& rule : rules) {
      const std::size_t len = match_at(text, pos, rule.pattern, 0);
      if (len > best_len) {  // ties keep the earlier rule
        best_len = len;
        best = &rule;
      }
    }
    if (best != nullptr) {
      out += best->replacement;
      pos += best_len;
    } else {
      out.push_back(text[pos]);
      ++pos;
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : uni::decode_utf8(text)) {
    if (uni::is_letter(cp) || uni::is_digit(cp)) {
      uni::append_utf8(current, cp);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

bool contains_digit(const std::string& token) {
  for (char32_t cp : uni::decode_utf8(token)) {
    if (uni::is_digit(cp)) return true;
  }
  return false;
}

bool contains_foreign_letter(const std::string& token, uni::Script allowed) {
  for (char32_t cp : uni::decode_utf8(token)) {
    if (uni::is_letter(cp) && uni::script_of(cp) != allowed) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> preprocess_question(const std::string& text,
                                             const PreprocessConfig& config) {
  const Normalizer normalize = normalizer_by_name(config.normalizer);
  const std::string substituted = apply_substitution_rules(text, config.rules);
  std::vector<std::string> out;
  for (const auto& token : tokenize(substituted)) {
    if (config.drop_digit_tokens && contains_digit(token)) continue;
    if (config.drop_foreign_script_tokens &&
        contains_foreign_letter(token, config.allowed_script)) {
      continue;
    }
    std::string normalized = normalize(token);
    if (normalized.empty()) continue;
    const std::string folded = uni::lower_copy(normalized);
    if (config.stopwords.count(folded) > 0) continue;
    if (config.custom_stopwords.count(folded) > 0) continue;
    out.push_back(std::move(normalized));
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists) {
  std::vector<std::string> words;
  for (const auto& list : token_lists) words.insert(words.end(), list.begin(), list.end());
  if (words.empty()) {
    throw DataError("vocabulary is empty: no tokens survived preprocessing");
  }
  std::sort(words.begin(), words.end());  // UTF-8 byte order == code point order
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return Vocabulary::from_ordered_unique(std::move(words));
}

std::unordered_set<std::string> load_stopword_file(const std::string& path) {
  auto in = io::open_input(path);
  std::unordered_set<std::string> words;
  std::string line;
  bool first = true;
  while (io::getline_crlf(in, line)) {
    if (first) {
      io::strip_bom(line);
      first = false;
    }
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string word = io::trim_ascii(line);
    if (word.empty()) continue;
    words.insert(uni::lower_copy(word));
  }
  return words;
}

std::vector<SubstitutionRule> load_rules_file(const std::string& path) {
  auto in = io::open_input(path);
  std::vector<SubstitutionRule> rules;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (io::getline_crlf(in, line)) {
    ++lineno;
    if (first) {
      io::strip_bom(line);
      first = false;
    }
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("line " + std::to_string(lineno) + ": rule needs pattern<TAB>replacement in " +
                      path);
    }
    SubstitutionRule rule;
    rule.pattern = line.substr(0, tab);
    rule.replacement = line.substr(tab + 1);
    if (rule.pattern.empty()) {
      throw DataError("line " + std::to_string(lineno) + ": empty pattern in " + path);
    }
    for (char c : rule.replacement) {
      if (is_space_byte(c)) {
        throw DataError("line " + std::to_string(lineno) +
                        ": replacement must not contain whitespace in " + path);
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

void save_preprocess_config(const std::string& path, const PreprocessConfig& config) {
  auto out = io::open_output(path);
  out << "qembed preprocess-config v1\n";
  out << "normalizer " << config.normalizer << "\n";
  out << "drop_digits " << (config.drop_digit_tokens ? 1 : 0) << "\n";
  out << "script ";
  if (config.drop_foreign_script_tokens) {
    out << uni::script_name(config.allowed_script);
  } else {
    out << "-";
  }
  out << "\n";
  auto sorted = [](const std::unordered_set<std::string>& words) {
    std::vector<std::string> v(words.begin(), words.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  out << "stopwords " << config.stopwords.size() << "\n";
  for (const auto& w : sorted(config.stopwords)) out << w << "\n";
  out << "custom_stopwords " << config.custom_stopwords.size() << "\n";
  for (const auto& w : sorted(config.custom_stopwords)) out << w << "\n";
  out << "rules " << config.rules.size() << "\n";
  for (const auto& r : config.rules) out << r.pattern << "\t" << r.replacement << "\n";
  if (!out) throw DataError("failed writing " + path);
}

namespace {

std::string expect_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!io::getline_crlf(in, line)) throw DataError("truncated preprocess config: " + path);
  return line;
}

std::pair<std::string, std::string> split_keyword(const std::string& line,
                                                  const std::string& path) {
  const std::size_t space = line.find(' ');
  if (space == std::string::npos) throw DataError("malformed line '" + line + "' in " + path);
  return {line.substr(0, space), line.substr(space + 1)};
}

}  // namespace

PreprocessConfig load_preprocess_config(const std::string& path) {
  auto in = io::open_input(path);
  std::string header = expect_line(in, path);
  io::strip_bom(header);
  if (header != "qembed preprocess-config v1") {
    throw DataError("unrecognized preprocess config header in " + path);
  }
  PreprocessConfig config;
  auto [kw1, normalizer] = split_keyword(expect_line(in, path), path);
  if (kw1 != "normalizer") throw DataError("expected normalizer line in " + path);
  config.normalizer = normalizer;
  auto [kw2, digits] = split_keyword(expect_line(in, path), path);
  if (kw2 != "drop_digits") throw DataError("expected drop_digits line in " + path);
  config.drop_digit_tokens = digits == "1";
  auto [kw3, script] = split_keyword(expect_line(in, path), path);
  if (kw3 != "script") throw DataError("expected script line in " + path);
  if (script == "-") {
    config.drop_foreign_script_tokens = false;
  } else {
    config.drop_foreign_script_tokens = true;
    config.allowed_script = uni::script_from_name(script);
  }
  auto [kw4, n_stop] = split_keyword(expect_line(in, path), path);
  if (kw4 != "stopwords") throw DataError("expected stopwords line in " + path);
  for (std::size_t i = 0, n = io::parse_size(n_stop, path); i < n; ++i) {
    config.stopwords.insert(expect_line(in, path));
  }
  auto [kw5, n_custom] = split_keyword(expect_line(in, path), path);
  if (kw5 != "custom_stopwords") throw DataError("expected custom_stopwords line in " + path);
  for (std::size_t i = 0, n = io::parse_size(n_custom, path); i < n; ++i) {
    config.custom_stopwords.insert(expect_line(in, path));
  }
  auto [kw6, n_rules] = split_keyword(expect_line(in, path), path);
  if (kw6 != "rules") throw DataError("expected rules line in " + path);
  for (std::size_t i = 0, n = io::parse_size(n_rules, path); i < n; ++i) {
    const std::string line = expect_line(in, path);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("malformed rule line in " + path);
    config.rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return config;
}

}  // namespace qembed
