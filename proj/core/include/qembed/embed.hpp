#ifndef QEMBED_EMBED_HPP
#define QEMBED_EMBED_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qembed/matrix.hpp"
#include "qembed/vocabulary.hpp"

namespace qembed {

// Cell value for words absent from a question. Deliberately not zero: absence
// carries its own signal, distinct from the zero entropy of a single-word
// question. Overridable per fit for ablation runs (--fill).
inline constexpr double kEntropySentinel = -0.0001;

// Per-word Shannon entropy within one question: -p*log2(p) with p = w/n for
// w > 0, the sentinel for w = 0. Requires n >= 1 and w <= n.
double entropy_value(std::size_t occurrences, std::size_t question_length);

struct EntropyMatrix {
  Matrix values;  // questions x vocabulary
  double fill = kEntropySentinel;
};

// Entry (i, j) = entropy_value(count of word j in question i, length of
// question i). A question with an empty token list yields an all-fill row.
EntropyMatrix build_entropy_matrix(const std::vector<std::vector<std::string>>& token_lists,
                                   const Vocabulary& vocab, double fill = kEntropySentinel);

enum class EmbeddingKind { Entropy, Tfidf, PmiVsm, External };

const char* kind_name(EmbeddingKind kind);
EmbeddingKind kind_from_name(const std::string& name);  // throws ConfigError

// A fitted vectorizer. Vector-backed kinds (entropy, pmi-vsm, external) hold
// one d-length vector per vocabulary word; tfidf holds idf weights and embeds
// straight into vocabulary space (dim == V).
struct EmbeddingModel {
  EmbeddingKind kind = EmbeddingKind::Entropy;
  Vocabulary vocab;
  Matrix word_vectors;       // V x dim for vector kinds, empty for tfidf
  std::vector<double> idf;   // size V for tfidf, empty otherwise
  std::size_t dim = 0;
  bool multiset_average = false;  // count duplicate words per occurrence
};

struct QuestionVector {
  std::vector<double> values;
  // Set when no in-vocabulary token contributed, so the vector is all zero.
  bool empty_embedding = false;
};

struct EntropyOptions {
  double fill = kEntropySentinel;
  bool multiset_average = false;
};

// Entropy matrix -> transpose to words x questions -> truncated SVD with
// k' = min(k, V, N). Word vectors are rows of U_k' * diag(sigma_k').
EmbeddingModel fit_entropy_embedding(const std::vector<std::vector<std::string>>& token_lists,
                                     const Vocabulary& vocab, std::size_t k, std::uint64_t seed,
                                     const EntropyOptions& options = {});

// idf(w) = ln(N / doc_count(w)); question vector entry j = count_j * idf_j.
EmbeddingModel fit_tfidf(const std::vector<std::vector<std::string>>& token_lists,
                         const Vocabulary& vocab);

// Positive PMI over word co-occurrence counts within a symmetric window of
// the given radius, reduced by truncated SVD to k' = min(k, V).
EmbeddingModel fit_pmi_vsm(const std::vector<std::vector<std::string>>& token_lists,
                           const Vocabulary& vocab, std::size_t window, std::size_t k,
                           std::uint64_t seed, bool multiset_average = false);

// Word-vector text format: header "V d", then V lines "word v1 ... vd",
// space-separated, UTF-8. Duplicate words and arity mismatches are rejected
// with the offending line number.
EmbeddingModel load_external_vectors(const std::string& path);
void write_word_vectors(const std::string& path, const std::vector<std::string>& names,
                        const Matrix& vectors);

// Mean of the word vectors of the distinct in-vocabulary tokens (every
// occurrence when the model was fitted with multiset averaging). Unknown
// tokens are skipped; no usable token yields a flagged zero vector. tfidf
// models return the count*idf weight vector instead.
QuestionVector embed_question(const EmbeddingModel& model,
                              const std::vector<std::string>& tokens);

// Rank-2 truncated SVD of the mean-centered vector matrix; row order follows
// the input. Requires >= 2 vectors of a common dimension >= 2.
std::vector<std::array<double, 2>> project_2d(const std::vector<QuestionVector>& vectors,
                                              std::uint64_t seed);

// Versioned text container: kind, dim, vocabulary, and the word-vector matrix
// or idf table. Unknown versions are rejected.
void save_embedding_model(const std::string& path, const EmbeddingModel& model);
EmbeddingModel load_embedding_model(const std::string& path);

}  // namespace qembed

#endif  // QEMBED_EMBED_HPP
