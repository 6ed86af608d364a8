#include "qembed/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qembed/errors.hpp"

namespace qembed {

namespace {

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

void append_pooled_table(std::ostringstream& out, const EvalReport& report,
                         std::size_t label_width) {
  out << pad("class", label_width) << "  precision  recall    f1        support\n";
  for (const auto& m : report.per_class) {
    out << pad(m.label, label_width) << "  " << fixed(m.precision, 3) << "      "
        << fixed(m.recall, 3) << "     " << fixed(m.f1, 3) << "     " << m.support << "\n";
  }
  out << pad("weighted avg", label_width) << "  " << pad(" ", 11) << pad(" ", 10)
      << fixed(report.weighted_f1, 3) << "     " << report.total << "\n";
  out << pad("macro avg", label_width) << "  " << pad(" ", 11) << pad(" ", 10)
      << fixed(report.macro_f1, 3) << "     " << report.total << "\n";
}

}  // namespace

std::string render_text_report(const Corpus& corpus, const std::vector<MethodRun>& runs) {
  if (runs.empty()) throw ConfigError("render_text_report: no method runs");
  std::ostringstream out;

  const auto distribution = class_distribution(corpus);
  const auto flagged = underrepresented_classes(corpus);
  std::size_t label_width = 12;  // fits "weighted avg"
  for (const auto& label : corpus.labels()) label_width = std::max(label_width, label.size());

  out << "Corpus: " << corpus.size() << " questions, " << corpus.labels().size() << " classes\n";
  out << "Class distribution:\n";
  for (const auto& label : corpus.labels()) {
    out << "  " << pad(label, label_width) << "  " << distribution.at(label);
    if (std::find(flagged.begin(), flagged.end(), label) != flagged.end()) {
      out << "  (underrepresented: below half the mean class count)";
    }
    out << "\n";
  }
  out << "\n";

  for (const auto& run : runs) {
    out << "== method " << run.method << " (" << run.result.fingerprint << ") ==\n";
    for (const auto& warning : run.result.warnings) out << "warning: " << warning << "\n";
    out << "Pooled out-of-fold report:\n";
    append_pooled_table(out, run.result.pooled, label_width);
    out << "Per-fold weighted F1:";
    for (std::size_t f = 0; f < run.result.fold_reports.size(); ++f) {
      out << " " << fixed(run.result.fold_reports[f].weighted_f1, 3);
    }
    out << "\n\n";
  }

  if (runs.size() > 1) {
    out << "Per-class F1 by method:\n";
    out << pad("class", label_width);
    for (const auto& run : runs) out << "  " << pad_left(run.method, 8);
    out << "\n";
    for (std::size_t c = 0; c < corpus.labels().size(); ++c) {
      out << pad(corpus.labels()[c], label_width);
      for (const auto& run : runs) {
        out << "  " << pad_left(fixed(run.result.pooled.per_class[c].f1, 3), 8);
      }
      out << "\n";
    }
    out << pad("Average", label_width);
    for (const auto& run : runs) {
      out << "  " << pad_left(fixed(run.result.pooled.weighted_f1, 3), 8);
    }
    out << "\n";
    out << pad("Macro", label_width);
    for (const auto& run : runs) {
      out << "  " << pad_left(fixed(run.result.pooled.macro_f1, 3), 8);
    }
    out << "\n\n";
  }

  out << "Note: the Average row is support-weighted; the unweighted macro mean is listed "
         "separately because the two differ whenever classes are unbalanced.\n";
  return out.str();
}

std::string render_tsv_report(const std::vector<MethodRun>& runs) {
  if (runs.empty()) throw ConfigError("render_tsv_report: no method runs");
  std::ostringstream out;
  out << "method\tfold\tclass\tmetric\tvalue\n";
  auto emit_report = [&out](const std::string& method, const std::string& fold,
                            const EvalReport& report) {
    for (const auto& m : report.per_class) {
      out << method << "\t" << fold << "\t" << m.label << "\tprecision\t" << fixed(m.precision, 6)
          << "\n";
      out << method << "\t" << fold << "\t" << m.label << "\trecall\t" << fixed(m.recall, 6)
          << "\n";
      out << method << "\t" << fold << "\t" << m.label << "\tf1\t" << fixed(m.f1, 6) << "\n";
      out << method << "\t" << fold << "\t" << m.label << "\tsupport\t" << m.support << "\n";
    }
    out << method << "\t" << fold << "\tmacro\tf1\t" << fixed(report.macro_f1, 6) << "\n";
    out << method << "\t" << fold << "\tweighted\tf1\t" << fixed(report.weighted_f1, 6) << "\n";
  };
  for (const auto& run : runs) {
    for (std::size_t f = 0; f < run.result.fold_reports.size(); ++f) {
      emit_report(run.method, std::to_string(f), run.result.fold_reports[f]);
    }
    emit_report(run.method, "pooled", run.result.pooled);
  }
  return out.str();
}

}  // namespace qembed
