#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace esgirt {

// A dichotomous response cell. Nothing else is representable.
enum class Cell : std::uint8_t { Zero = 0, One = 1, Missing = 2 };

inline bool is_observed(Cell c) { return c != Cell::Missing; }
inline int cell_value(Cell c) { return static_cast<int>(c); }  // observed only

// Persons x items matrix of {0, 1, missing}; items are month labels.
// Row-major storage.
class ResponseMatrix {
 public:
  ResponseMatrix() = default;
  ResponseMatrix(std::vector<std::string> items, size_t n_rows)
      : items_(std::move(items)),
        n_rows_(n_rows),
        cells_(n_rows * items_.size(), Cell::Missing) {}

  size_t n_rows() const { return n_rows_; }
  size_t n_items() const { return items_.size(); }
  const std::vector<std::string>& items() const { return items_; }

  Cell at(size_t row, size_t item) const { return cells_[row * items_.size() + item]; }
  void set(size_t row, size_t item, Cell v) { cells_[row * items_.size() + item] = v; }

  // Non-missing count per item column.
  std::vector<size_t> observed_counts() const;
  // Count of 1-cells per item column.
  std::vector<size_t> positive_counts() const;

  // CSV with header "row_id,<item>,...", empty cell = missing.
  std::string to_csv() const;
  static ResponseMatrix from_csv(const std::string& text);
  static ResponseMatrix load_csv(const std::string& path);

 private:
  std::vector<std::string> items_;
  size_t n_rows_ = 0;
  std::vector<Cell> cells_;
};

}  // namespace esgirt
