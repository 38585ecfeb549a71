#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esgirt/calendar.hpp"

namespace esgirt {

enum class Dimension { Environment, Social, Governance };

std::string_view to_string(Dimension d);
// Case-insensitive; also accepts the single letters E/S/G. Throws ParseError.
Dimension parse_dimension(std::string_view text);

// One dated news item. label: 1 = positive ESG, 0 = negative ESG,
// nullopt = not yet classified.
struct NewsRecord {
  std::string id;
  Date date;
  std::string text;
  std::optional<int> label;
  std::optional<Dimension> dimension;
};

// Ordered collection of records plus the month range they cover.
// period is empty only for an empty corpus.
struct Corpus {
  std::vector<NewsRecord> records;
  std::optional<MonthRange> period;

  size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

// Checks invariants: unique ids, labels in {0,1}, every date inside
// period. Throws ValidationError.
void validate_corpus(const Corpus& corpus);

// Keeps only records whose month falls inside `range` and sets the
// period to `range`. Used for per-year model fits and for forcing
// empty months into the matrix.
Corpus restrict_period(const Corpus& corpus, const MonthRange& range);

}  // namespace esgirt
