#include "esgirt/response_matrix.hpp"

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

std::vector<size_t> ResponseMatrix::observed_counts() const {
  std::vector<size_t> counts(n_items(), 0);
  for (size_t i = 0; i < n_rows_; ++i) {
    for (size_t j = 0; j < n_items(); ++j) {
      if (is_observed(at(i, j))) ++counts[j];
    }
  }
  return counts;
}

std::vector<size_t> ResponseMatrix::positive_counts() const {
  std::vector<size_t> counts(n_items(), 0);
  for (size_t i = 0; i < n_rows_; ++i) {
    for (size_t j = 0; j < n_items(); ++j) {
      if (at(i, j) == Cell::One) ++counts[j];
    }
  }
  return counts;
}

std::string ResponseMatrix::to_csv() const {
  std::string out = "row_id";
  for (const std::string& item : items_) {
    out += ',';
    out += csv::escape(item);
  }
  out += '\n';
  for (size_t i = 0; i < n_rows_; ++i) {
    out += std::to_string(i + 1);
    for (size_t j = 0; j < n_items(); ++j) {
      out += ',';
      Cell c = at(i, j);
      if (is_observed(c)) out += static_cast<char>('0' + cell_value(c));
    }
    out += '\n';
  }
  return out;
}

ResponseMatrix ResponseMatrix::from_csv(const std::string& text) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows[0].empty() || rows[0][0] != "row_id") {
    throw ParseError("matrix CSV: expected header starting with 'row_id'");
  }
  std::vector<std::string> items(rows[0].begin() + 1, rows[0].end());
  if (items.empty()) throw ParseError("matrix CSV: no item columns");

  ResponseMatrix m(std::move(items), rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.size() != m.n_items() + 1) {
      throw ParseError("matrix CSV row " + std::to_string(r + 1) + ": expected " +
                       std::to_string(m.n_items() + 1) + " fields, got " +
                       std::to_string(row.size()));
    }
    for (size_t j = 0; j < m.n_items(); ++j) {
      const std::string& f = row[j + 1];
      if (f.empty()) continue;
      if (f == "0") {
        m.set(r - 1, j, Cell::Zero);
      } else if (f == "1") {
        m.set(r - 1, j, Cell::One);
      } else {
        throw ParseError("matrix CSV row " + std::to_string(r + 1) + ", column '" +
                         m.items()[j] + "': cell must be 0, 1, or empty, got '" + f + "'");
      }
    }
  }
  return m;
}

ResponseMatrix ResponseMatrix::load_csv(const std::string& path) {
  return from_csv(read_text_file(path));
}

}  // namespace esgirt
