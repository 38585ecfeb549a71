#include "esgirt/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "esgirt/errors.hpp"

namespace esgirt {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Environment: return "Environment";
    case Dimension::Social: return "Social";
    case Dimension::Governance: return "Governance";
  }
  return "?";
}

Dimension parse_dimension(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "environment" || lower == "e") return Dimension::Environment;
  if (lower == "social" || lower == "s") return Dimension::Social;
  if (lower == "governance" || lower == "g") return Dimension::Governance;
  throw ParseError("unknown ESG dimension '" + std::string(text) + "'");
}

void validate_corpus(const Corpus& corpus) {
  if (!corpus.records.empty() && !corpus.period.has_value()) {
    throw ValidationError("corpus has records but no period");
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(corpus.records.size());
  for (const NewsRecord& r : corpus.records) {
    if (!seen.insert(r.id).second) {
      throw ValidationError("duplicate record id '" + r.id + "'");
    }
    if (r.label && *r.label != 0 && *r.label != 1) {
      throw ValidationError("record '" + r.id + "': label must be 0 or 1");
    }
    if (corpus.period && !corpus.period->contains(month_of(r.date))) {
      throw ValidationError("record '" + r.id + "' dated " + format_date(r.date) +
                            " falls outside the corpus period");
    }
  }
}

Corpus restrict_period(const Corpus& corpus, const MonthRange& range) {
  Corpus out;
  out.period = range;
  out.records.reserve(corpus.records.size());
  for (const NewsRecord& r : corpus.records) {
    if (range.contains(month_of(r.date))) out.records.push_back(r);
  }
  return out;
}

}  // namespace esgirt
