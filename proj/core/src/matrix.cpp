#include "qembed/matrix.hpp"

#include <cmath>

#include "qembed/errors.hpp"
#include "textio.hpp"

namespace qembed {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw ConfigError("ragged rows in matrix literal");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

void write_matrix(const std::string& path, const Matrix& m) {
  auto out = io::open_output(path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << io::format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

Matrix read_matrix(const std::string& path) {
  auto in = io::open_input(path);
  std::string line;
  if (!io::getline_crlf(in, line)) throw DataError("empty matrix file: " + path);
  auto header = io::split_ws(line);
  if (header.size() != 2) throw DataError("bad matrix header in " + path);
  const std::size_t rows = io::parse_size(header[0], "in matrix header of " + path);
  const std::size_t cols = io::parse_size(header[1], "in matrix header of " + path);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    // 1-based file line: header occupies line 1, row i sits on line i + 2.
    const std::string where = "line " + std::to_string(i + 2);
    if (!io::getline_crlf(in, line)) {
      throw DataError("matrix file truncated at " + where + ": " + path);
    }
    auto vals = io::split_ws(line);
    if (vals.size() != cols) {
      throw DataError(where + " has " + std::to_string(vals.size()) + " values, expected " +
                      std::to_string(cols) + ": " + path);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = io::parse_double(vals[j], "at " + where + " of " + path);
    }
  }
  return m;
}

}  // namespace qembed
