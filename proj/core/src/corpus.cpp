#include "qembed/corpus.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "qembed/errors.hpp"
#include "qembed/rng.hpp"
#include "textio.hpp"

namespace qembed {

namespace {

// One parsed record plus the 1-based line it started on.
struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC 4180: quoted fields may contain commas, doubled quotes and newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next(Record& rec) {
    rec.fields.clear();
    int c = in_.get();
    while (c == '\n') {  // skip blank lines
      ++line_;
      c = in_.get();
    }
    if (c == EOF) return false;
    rec.line = line_;
    std::string field;
    bool quoted = false;
    bool any = false;
    while (true) {
      if (quoted) {
        if (c == EOF) throw DataError("unterminated quoted field starting at line " +
                                      std::to_string(rec.line));
        if (c == '"') {
          if (in_.peek() == '"') {
            field.push_back('"');
            in_.get();
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(static_cast<char>(c));
        }
      } else {
        if (c == EOF || c == '\n') {
          if (c == '\n') ++line_;
          break;
        }
        if (c == '\r' && in_.peek() == '\n') {
          in_.get();
          ++line_;
          break;
        }
        if (c == '"' && field.empty() && !any) {
          quoted = true;
          any = true;
        } else if (c == ',') {
          rec.fields.push_back(std::move(field));
          field.clear();
          any = false;
        } else {
          field.push_back(static_cast<char>(c));
          any = true;
        }
      }
      c = in_.get();
    }
    rec.fields.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

class TsvReader {
 public:
  explicit TsvReader(std::istream& in) : in_(in) {}

  bool next(Record& rec) {
    std::string line;
    while (io::getline_crlf(in_, line)) {
      ++line_;
      if (line.empty()) continue;
      rec.line = line_;
      rec.fields.clear();
      std::size_t start = 0;
      while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
          rec.fields.push_back(line.substr(start));
          break;
        }
        rec.fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
      }
      return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

struct HeaderLayout {
  int text_col = -1;
  int label_col = -1;  // -1 when the file has no label column
  std::size_t width = 0;
};

HeaderLayout parse_header(Record& header, bool label_required, const std::string& path) {
  if (!header.fields.empty()) io::strip_bom(header.fields[0]);
  HeaderLayout layout;
  layout.width = header.fields.size();
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const std::string name = io::trim_ascii(header.fields[i]);
    if (name == "text") {
      if (layout.text_col >= 0) throw DataError("duplicate 'text' column in " + path);
      layout.text_col = static_cast<int>(i);
    } else if (name == "label") {
      if (layout.label_col >= 0) throw DataError("duplicate 'label' column in " + path);
      layout.label_col = static_cast<int>(i);
    } else {
      throw DataError("unexpected column '" + name + "' in header of " + path);
    }
  }
  if (layout.text_col < 0) throw DataError("missing 'text' column in header of " + path);
  if (label_required && layout.label_col < 0) {
    throw DataError("missing 'label' column in header of " + path);
  }
  return layout;
}

template <typename Reader>
std::vector<std::pair<std::string, std::string>> read_rows(Reader& reader, bool label_required,
                                                           const std::string& path) {
  Record rec;
  if (!reader.next(rec)) throw DataError("empty file: " + path);
  const HeaderLayout layout = parse_header(rec, label_required, path);

  std::vector<std::pair<std::string, std::string>> rows;
  while (reader.next(rec)) {
    if (rec.fields.size() != layout.width) {
      throw DataError("line " + std::to_string(rec.line) + ": expected " +
                      std::to_string(layout.width) + " columns, got " +
                      std::to_string(rec.fields.size()) + " in " + path);
    }
    std::string text = io::trim_ascii(rec.fields[static_cast<std::size_t>(layout.text_col)]);
    if (text.empty()) {
      throw DataError("line " + std::to_string(rec.line) + ": empty text field in " + path);
    }
    std::string label;
    if (layout.label_col >= 0) {
      label = io::trim_ascii(rec.fields[static_cast<std::size_t>(layout.label_col)]);
      if (label_required && label.empty()) {
        throw DataError("line " + std::to_string(rec.line) + ": empty label field in " + path);
      }
    }
    rows.emplace_back(std::move(text), std::move(label));
  }
  if (rows.empty()) throw DataError("no data rows in " + path);
  return rows;
}

std::vector<std::pair<std::string, std::string>> read_file(const std::string& path,
                                                           CorpusFormat format,
                                                           bool label_required) {
  auto in = io::open_input(path);
  if (format == CorpusFormat::Csv) {
    CsvReader reader(in);
    return read_rows(reader, label_required, path);
  }
  TsvReader reader(in);
  return read_rows(reader, label_required, path);
}

}  // namespace

Corpus Corpus::from_rows(const std::vector<std::pair<std::string, std::string>>& rows) {
  if (rows.empty()) throw DataError("corpus has no questions");
  Corpus c;
  c.questions_.reserve(rows.size());
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [text, label] = rows[i];
    if (io::trim_ascii(text).empty()) {
      throw DataError("question " + std::to_string(i) + " is empty");
    }
    if (label.empty()) throw DataError("question " + std::to_string(i) + " has no label");
    c.questions_.push_back({i, text, label});
    if (seen.insert(label).second) c.labels_.push_back(label);
  }
  return c;
}

CorpusFormat format_from_name(const std::string& name) {
  if (name == "tsv") return CorpusFormat::Tsv;
  if (name == "csv") return CorpusFormat::Csv;
  throw ConfigError("unknown corpus format: " + name + " (expected tsv or csv)");
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  return Corpus::from_rows(read_file(path, format, /*label_required=*/true));
}

std::vector<std::string> load_texts(const std::string& path, CorpusFormat format) {
  auto rows = read_file(path, format, /*label_required=*/false);
  std::vector<std::string> texts;
  texts.reserve(rows.size());
  for (auto& [text, label] : rows) texts.push_back(std::move(text));
  return texts;
}

std::map<std::string, std::size_t> class_distribution(const Corpus& corpus) {
  if (corpus.size() == 0) throw ConfigError("class_distribution: empty corpus");
  std::map<std::string, std::size_t> counts;
  for (const auto& label : corpus.labels()) counts[label] = 0;
  for (const auto& q : corpus.questions()) ++counts[q.label];
  return counts;
}

std::vector<std::string> underrepresented_classes(const Corpus& corpus) {
  const auto counts = class_distribution(corpus);
  const double mean =
      static_cast<double>(corpus.size()) / static_cast<double>(corpus.labels().size());
  std::vector<std::string> flagged;
  for (const auto& label : corpus.labels()) {
    if (static_cast<double>(counts.at(label)) < mean / 2.0) flagged.push_back(label);
  }
  return flagged;
}

std::vector<std::vector<std::size_t>> FoldPlan::fold_members() const {
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) members[assignment[i]].push_back(i);
  return members;
}

FoldPlan split_folds(std::size_t n, const std::vector<std::string>& labels, std::size_t k,
                     std::uint64_t seed, FoldStrategy strategy) {
  if (k < 2) throw ConfigError("fold count must be at least 2");
  if (k > n) throw ConfigError("fold count " + std::to_string(k) + " exceeds question count " +
                               std::to_string(n));

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.strategy = strategy;
  plan.assignment.assign(n, 0);

  if (strategy == FoldStrategy::PlainShuffled) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 gen(seed);
    rng::fisher_yates(order, gen);
    for (std::size_t i = 0; i < n; ++i) plan.assignment[order[i]] = i % k;
    return plan;
  }

  if (labels.size() != n) {
    throw ConfigError("stratified split needs one label per question");
  }
  // Class order = first occurrence; members dealt round-robin with the fold
  // cursor carried across classes, so totals stay within one as well.
  std::vector<std::string> class_order;
  std::unordered_map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = by_class.try_emplace(labels[i]);
    if (inserted) class_order.push_back(labels[i]);
    it->second.push_back(i);
  }
  std::size_t pos = 0;
  for (std::size_t c = 0; c < class_order.size(); ++c) {
    auto& members = by_class[class_order[c]];
    std::mt19937_64 gen(seed + c);
    rng::fisher_yates(members, gen);
    for (std::size_t idx : members) {
      plan.assignment[idx] = pos % k;
      ++pos;
    }
  }
  return plan;
}

}  // namespace qembed
