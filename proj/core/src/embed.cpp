#include "qembed/embed.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "qembed/errors.hpp"
#include "qembed/svd.hpp"
#include "textio.hpp"

namespace qembed {

double entropy_value(std::size_t occurrences, std::size_t question_length) {
  if (question_length == 0) throw ConfigError("entropy_value: question length is zero");
  if (occurrences > question_length) {
    throw ConfigError("entropy_value: occurrence count exceeds question length");
  }
  if (occurrences == 0) return kEntropySentinel;
  const double p = static_cast<double>(occurrences) / static_cast<double>(question_length);
  return -p * std::log2(p);
}

EntropyMatrix build_entropy_matrix(const std::vector<std::vector<std::string>>& token_lists,
                                   const Vocabulary& vocab, double fill) {
  if (token_lists.empty()) throw ConfigError("build_entropy_matrix: no questions");
  EntropyMatrix em;
  em.fill = fill;
  em.values = Matrix(token_lists.size(), vocab.size(), fill);
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    const auto& tokens = token_lists[i];
    if (tokens.empty()) continue;  // all-fill row
    std::unordered_map<int, std::size_t> counts;
    for (const auto& token : tokens) {
      const int j = vocab.index_of(token);
      if (j < 0) {
        throw ConfigError("build_entropy_matrix: token '" + token + "' missing from vocabulary");
      }
      ++counts[j];
    }
    for (const auto& [j, w] : counts) {
      em.values(i, static_cast<std::size_t>(j)) = entropy_value(w, tokens.size());
    }
  }
  return em;
}

const char* kind_name(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::Entropy:
      return "entropy";
    case EmbeddingKind::Tfidf:
      return "tfidf";
    case EmbeddingKind::PmiVsm:
      return "pmi-vsm";
    case EmbeddingKind::External:
      return "external";
  }
  throw ConfigError("kind_name: invalid embedding kind");
}

EmbeddingKind kind_from_name(const std::string& name) {
  if (name == "entropy") return EmbeddingKind::Entropy;
  if (name == "tfidf") return EmbeddingKind::Tfidf;
  if (name == "pmi-vsm") return EmbeddingKind::PmiVsm;
  if (name == "external") return EmbeddingKind::External;
  throw ConfigError("unknown embedding method: " + name);
}

namespace {

// Rows of U_k' * diag(sigma_k').
Matrix scale_u_by_sigma(const SvdFactors& f) {
  Matrix vectors(f.u.rows(), f.rank(), 0.0);
  for (std::size_t i = 0; i < f.u.rows(); ++i) {
    for (std::size_t j = 0; j < f.rank(); ++j) vectors(i, j) = f.u(i, j) * f.sigma[j];
  }
  return vectors;
}

}  // namespace

EmbeddingModel fit_entropy_embedding(const std::vector<std::vector<std::string>>& token_lists,
                                     const Vocabulary& vocab, std::size_t k, std::uint64_t seed,
                                     const EntropyOptions& options) {
  if (k == 0) throw ConfigError("fit_entropy_embedding: target dimension must be >= 1");
  const EntropyMatrix em = build_entropy_matrix(token_lists, vocab, options.fill);
  const Matrix words_by_questions = em.values.transposed();  // V x N
  const std::size_t kp = std::min({k, vocab.size(), token_lists.size()});
  const SvdFactors f = truncated_svd(words_by_questions, kp, seed);

  EmbeddingModel model;
  model.kind = EmbeddingKind::Entropy;
  model.vocab = vocab;
  model.word_vectors = scale_u_by_sigma(f);
  model.dim = f.rank();
  model.multiset_average = options.multiset_average;
  return model;
}

EmbeddingModel fit_tfidf(const std::vector<std::vector<std::string>>& token_lists,
                         const Vocabulary& vocab) {
  if (token_lists.empty()) throw ConfigError("fit_tfidf: no questions");
  std::vector<std::size_t> doc_count(vocab.size(), 0);
  for (const auto& tokens : token_lists) {
    std::vector<int> seen;
    for (const auto& token : tokens) {
      const int j = vocab.index_of(token);
      if (j < 0) throw ConfigError("fit_tfidf: token '" + token + "' missing from vocabulary");
      seen.push_back(j);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (int j : seen) ++doc_count[static_cast<std::size_t>(j)];
  }
  const double n = static_cast<double>(token_lists.size());
  EmbeddingModel model;
  model.kind = EmbeddingKind::Tfidf;
  model.vocab = vocab;
  model.idf.resize(vocab.size(), 0.0);
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    // Vocabulary words come from these token lists, so doc_count >= 1.
    model.idf[j] = doc_count[j] == 0 ? 0.0 : std::log(n / static_cast<double>(doc_count[j]));
  }
  model.dim = vocab.size();
  return model;
}

EmbeddingModel fit_pmi_vsm(const std::vector<std::vector<std::string>>& token_lists,
                           const Vocabulary& vocab, std::size_t window, std::size_t k,
                           std::uint64_t seed, bool multiset_average) {
  if (window == 0) throw ConfigError("fit_pmi_vsm: window radius must be >= 1");
  if (k == 0) throw ConfigError("fit_pmi_vsm: target dimension must be >= 1");
  if (token_lists.empty()) throw ConfigError("fit_pmi_vsm: no questions");

  const std::size_t v = vocab.size();
  Matrix counts(v, v, 0.0);
  double total = 0.0;
  std::vector<double> row_sum(v, 0.0);
  std::vector<double> col_sum(v, 0.0);
  for (const auto& tokens : token_lists) {
    std::vector<std::size_t> ids;
    ids.reserve(tokens.size());
    for (const auto& token : tokens) {
      const int j = vocab.index_of(token);
      if (j < 0) throw ConfigError("fit_pmi_vsm: token '" + token + "' missing from vocabulary");
      ids.push_back(static_cast<std::size_t>(j));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t lo = i > window ? i - window : 0;
      const std::size_t hi = std::min(ids.size(), i + window + 1);
      for (std::size_t j = lo; j < hi; ++j) {
        if (j == i) continue;
        counts(ids[i], ids[j]) += 1.0;
        row_sum[ids[i]] += 1.0;
        col_sum[ids[j]] += 1.0;
        total += 1.0;
      }
    }
  }
  if (total == 0.0) {
    throw NumericError("fit_pmi_vsm: no co-occurrences (all questions have one token?)");
  }

  // pmi = ln(p_ij / (p_i * p_j)) = ln(F_ij * T / (r_i * c_j)), clipped at 0.
  Matrix pmi(v, v, 0.0);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      const double f = counts(i, j);
      if (f <= 0.0) continue;
      const double value = std::log(f * total / (row_sum[i] * col_sum[j]));
      if (value > 0.0) pmi(i, j) = value;
    }
  }

  const std::size_t kp = std::min(k, v);
  const SvdFactors f = truncated_svd(pmi, kp, seed);

  EmbeddingModel model;
  model.kind = EmbeddingKind::PmiVsm;
  model.vocab = vocab;
  model.word_vectors = scale_u_by_sigma(f);
  model.dim = f.rank();
  model.multiset_average = multiset_average;
  return model;
}

EmbeddingModel load_external_vectors(const std::string& path) {
  auto in = io::open_input(path);
  std::string line;
  if (!io::getline_crlf(in, line)) throw DataError("empty vector file: " + path);
  io::strip_bom(line);
  auto header = io::split_ws(line);
  if (header.size() != 2) {
    throw DataError("line 1: expected 'count dimension' header in " + path);
  }
  const std::size_t v = io::parse_size(header[0], path + " line 1");
  const std::size_t d = io::parse_size(header[1], path + " line 1");
  if (v == 0 || d == 0) throw DataError("line 1: vector file declares an empty table in " + path);

  std::vector<std::string> words;
  words.reserve(v);
  Matrix vectors(v, d, 0.0);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < v; ++i) {
    if (!io::getline_crlf(in, line)) {
      throw DataError("line " + std::to_string(i + 2) + ": expected " + std::to_string(v) +
                      " vector rows in " + path);
    }
    const auto fields = io::split_ws(line);
    if (fields.size() != d + 1) {
      throw DataError("line " + std::to_string(i + 2) + ": expected word plus " +
                      std::to_string(d) + " values in " + path);
    }
    if (!seen.emplace(fields[0], i).second) {
      throw DataError("line " + std::to_string(i + 2) + ": duplicate word '" + fields[0] +
                      "' in " + path);
    }
    words.push_back(fields[0]);
    for (std::size_t j = 0; j < d; ++j) {
      vectors(i, j) = io::parse_double(fields[j + 1], path + " line " + std::to_string(i + 2));
    }
  }

  EmbeddingModel model;
  model.kind = EmbeddingKind::External;
  model.vocab = Vocabulary::from_ordered_unique(std::move(words));
  model.word_vectors = std::move(vectors);
  model.dim = d;
  return model;
}

void write_word_vectors(const std::string& path, const std::vector<std::string>& names,
                        const Matrix& vectors) {
  if (names.size() != vectors.rows()) {
    throw ConfigError("write_word_vectors: name count does not match row count");
  }
  if (vectors.rows() == 0 || vectors.cols() == 0) {
    throw ConfigError("write_word_vectors: empty vector table");
  }
  auto out = io::open_output(path);
  out << vectors.rows() << " " << vectors.cols() << "\n";
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    out << names[i];
    for (std::size_t j = 0; j < vectors.cols(); ++j) out << " " << io::format_double(vectors(i, j));
    out << "\n";
  }
  if (!out) throw DataError("failed writing " + path);
}

QuestionVector embed_question(const EmbeddingModel& model,
                              const std::vector<std::string>& tokens) {
  QuestionVector qv;
  if (model.kind == EmbeddingKind::Tfidf) {
    qv.values.assign(model.vocab.size(), 0.0);
    bool any = false;
    for (const auto& token : tokens) {
      const int j = model.vocab.index_of(token);
      if (j < 0) continue;
      qv.values[static_cast<std::size_t>(j)] += model.idf[static_cast<std::size_t>(j)];
      any = true;
    }
    qv.empty_embedding = !any;
    return qv;
  }

  qv.values.assign(model.dim, 0.0);
  // Ascending index order keeps the sum bit-identical under token permutation.
  std::map<std::size_t, std::size_t> in_vocab;  // index -> occurrence count
  for (const auto& token : tokens) {
    const int j = model.vocab.index_of(token);
    if (j >= 0) ++in_vocab[static_cast<std::size_t>(j)];
  }
  if (in_vocab.empty()) {
    qv.empty_embedding = true;
    return qv;
  }
  double denom = 0.0;
  for (const auto& [index, count] : in_vocab) {
    const double weight = model.multiset_average ? static_cast<double>(count) : 1.0;
    for (std::size_t j = 0; j < model.dim; ++j) {
      qv.values[j] += weight * model.word_vectors(index, j);
    }
    denom += weight;
  }
  for (double& value : qv.values) value /= denom;
  return qv;
}

std::vector<std::array<double, 2>> project_2d(const std::vector<QuestionVector>& vectors,
                                              std::uint64_t seed) {
  if (vectors.size() < 2) throw ConfigError("project_2d: need at least two vectors");
  const std::size_t d = vectors[0].values.size();
  if (d < 2) throw ConfigError("project_2d: need vectors of dimension >= 2");
  for (const auto& qv : vectors) {
    if (qv.values.size() != d) throw ConfigError("project_2d: mixed vector dimensions");
  }

  Matrix centered(vectors.size(), d, 0.0);
  std::vector<double> mean(d, 0.0);
  for (const auto& qv : vectors) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += qv.values[j];
  }
  for (double& m : mean) m /= static_cast<double>(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) centered(i, j) = vectors[i].values[j] - mean[j];
  }

  const SvdFactors f = truncated_svd(centered, 2, seed);
  std::vector<std::array<double, 2>> coords(vectors.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < f.rank(); ++j) coords[i][j] = f.u(i, j) * f.sigma[j];
  }
  return coords;
}

void save_embedding_model(const std::string& path, const EmbeddingModel& model) {
  auto out = io::open_output(path);
  out << "qembed embedding-model v1\n";
  out << "kind " << kind_name(model.kind) << "\n";
  out << "dim " << model.dim << "\n";
  out << "multiset " << (model.multiset_average ? 1 : 0) << "\n";
  out << "vocab " << model.vocab.size() << "\n";
  for (const auto& word : model.vocab.words()) out << word << "\n";
  if (model.kind == EmbeddingKind::Tfidf) {
    out << "idf " << model.idf.size() << "\n";
    for (double value : model.idf) out << io::format_double(value) << "\n";
  } else {
    out << "matrix " << model.word_vectors.rows() << " " << model.word_vectors.cols() << "\n";
    for (std::size_t i = 0; i < model.word_vectors.rows(); ++i) {
      for (std::size_t j = 0; j < model.word_vectors.cols(); ++j) {
        if (j > 0) out << " ";
        out << io::format_double(model.word_vectors(i, j));
      }
      out << "\n";
    }
  }
  if (!out) throw DataError("failed writing " + path);
}

namespace {

std::string read_model_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!io::getline_crlf(in, line)) throw DataError("truncated embedding model: " + path);
  return line;
}

std::string expect_keyword(std::istream& in, const std::string& keyword,
                           const std::string& path) {
  const std::string line = read_model_line(in, path);
  if (line.rfind(keyword + " ", 0) != 0) {
    throw DataError("expected '" + keyword + "' line in " + path);
  }
  return line.substr(keyword.size() + 1);
}

}  // namespace

EmbeddingModel load_embedding_model(const std::string& path) {
  auto in = io::open_input(path);
  std::string header = read_model_line(in, path);
  io::strip_bom(header);
  if (header != "qembed embedding-model v1") {
    throw DataError("unrecognized embedding model header in " + path);
  }
  EmbeddingModel model;
  model.kind = kind_from_name(expect_keyword(in, "kind", path));
  model.dim = io::parse_size(expect_keyword(in, "dim", path), path);
  model.multiset_average = expect_keyword(in, "multiset", path) == "1";
  const std::size_t v = io::parse_size(expect_keyword(in, "vocab", path), path);
  std::vector<std::string> words;
  words.reserve(v);
  for (std::size_t i = 0; i < v; ++i) words.push_back(read_model_line(in, path));
  model.vocab = Vocabulary::from_ordered_unique(std::move(words));

  if (model.kind == EmbeddingKind::Tfidf) {
    const std::size_t n = io::parse_size(expect_keyword(in, "idf", path), path);
    if (n != v) throw DataError("idf table size does not match vocabulary in " + path);
    model.idf.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      model.idf.push_back(io::parse_double(read_model_line(in, path), path));
    }
  } else {
    const auto shape = io::split_ws(expect_keyword(in, "matrix", path));
    if (shape.size() != 2) throw DataError("malformed matrix header in " + path);
    const std::size_t rows = io::parse_size(shape[0], path);
    const std::size_t cols = io::parse_size(shape[1], path);
    if (rows != v) throw DataError("matrix row count does not match vocabulary in " + path);
    if (cols != model.dim) throw DataError("matrix width does not match dim in " + path);
    model.word_vectors = Matrix(rows, cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto fields = io::split_ws(read_model_line(in, path));
      if (fields.size() != cols) {
        throw DataError("matrix row " + std::to_string(i) + " has wrong arity in " + path);
      }
      for (std::size_t j = 0; j < cols; ++j) {
        model.word_vectors(i, j) = io::parse_double(fields[j], path);
      }
    }
  }
  return model;
}

}  // namespace qembed
