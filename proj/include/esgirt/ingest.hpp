#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "esgirt/corpus.hpp"
#include "esgirt/response_matrix.hpp"

namespace esgirt {

enum class CorpusFormat { Csv, Jsonl };

// Picks the format from the file extension (.jsonl/.ndjson -> Jsonl,
// anything else -> Csv).
CorpusFormat guess_format(const std::string& path);

// CSV columns id,date,text,label,dimension (header required, extra
// columns ignored) or JSONL with the same field names. Records keep
// file order; period is min..max month of the data.
Corpus parse_corpus(const std::string& path, CorpusFormat format);
Corpus parse_corpus_text(const std::string& text, CorpusFormat format,
                         const std::string& origin = "<memory>");

std::string corpus_to_csv(const Corpus& corpus);
std::string corpus_to_jsonl(const Corpus& corpus);

// Deterministic split: ids are sorted, shuffled by `seed`, and the
// first round(n * train_fraction) (half up) go to the train side.
// Membership depends only on the id set, the fraction, and the seed;
// both outputs keep the input record order.
std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus,
                                          double train_fraction,
                                          std::uint64_t seed);

// One column per month of the period (empty months stay all-missing);
// within a month, labels fill rows top-down in record order; short
// months are padded with missing. Requires every record labeled.
ResponseMatrix build_response_matrix(const Corpus& corpus);

// Text-scoring hook: gets the record, returns a score in [0,1].
using TextScorer = std::function<double(const NewsRecord&)>;

// Labels every unlabeled record with score >= 0.5 -> 1 else 0; labeled
// records pass through untouched. A throwing scorer is reported as a
// ValidationError naming the record id.
Corpus classify_with_hook(const Corpus& corpus, const TextScorer& scorer);

// Per-month ingest summary (counts and positive rates).
struct MonthSummary {
  std::string month;
  size_t count = 0;
  size_t positive = 0;
  std::optional<double> positive_rate;  // nullopt for empty months
};

std::vector<MonthSummary> summarize_by_month(const Corpus& corpus);

}  // namespace esgirt
