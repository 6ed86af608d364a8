#ifndef QEMBED_REPORT_HPP
#define QEMBED_REPORT_HPP

#include <string>
#include <vector>

#include "qembed/corpus.hpp"
#include "qembed/evaluate.hpp"

namespace qembed {

struct MethodRun {
  std::string method;  // display name, e.g. "entropy"
  CVResult result;
};

// Human-readable report: corpus stats, per-method pooled tables, per-fold
// weighted F1, and a per-class F1 comparison grid when several methods ran.
// The Average row of the grid is support-weighted; the macro mean is printed
// separately.
std::string render_text_report(const Corpus& corpus, const std::vector<MethodRun>& runs);

// Machine-readable TSV, one row per (method, fold, class, metric); fold is a
// 0-based index or "pooled", pseudo-classes "macro" and "weighted" carry the
// aggregate F1. Byte-stable for fixed inputs.
std::string render_tsv_report(const std::vector<MethodRun>& runs);

}  // namespace qembed

#endif  // QEMBED_REPORT_HPP
