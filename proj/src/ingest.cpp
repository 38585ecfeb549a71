#include "esgirt/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

using nlohmann::json;

std::optional<MonthRange> infer_period(const std::vector<NewsRecord>& records) {
  if (records.empty()) return std::nullopt;
  MonthKey lo = month_of(records.front().date);
  MonthKey hi = lo;
  for (const NewsRecord& r : records) {
    MonthKey m = month_of(r.date);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return MonthRange{lo, hi};
}

std::optional<int> parse_label_field(const std::string& field, const std::string& where) {
  if (field.empty()) return std::nullopt;
  if (field == "0") return 0;
  if (field == "1") return 1;
  throw ValidationError(where + ": label must be 0 or 1, got '" + field + "'");
}

Corpus parse_corpus_csv(const std::string& text, const std::string& origin) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError(origin + ": missing header row");

  std::unordered_map<std::string, size_t> col;
  for (size_t i = 0; i < rows[0].size(); ++i) col.emplace(rows[0][i], i);
  for (const char* required : {"id", "date"}) {
    if (!col.count(required)) {
      throw ParseError(origin + ": header lacks required column '" + std::string(required) + "'");
    }
  }
  auto field = [&](const csv::Row& row, const char* name) -> std::string {
    auto it = col.find(name);
    if (it == col.end() || it->second >= row.size()) return {};
    return row[it->second];
  };

  Corpus corpus;
  corpus.records.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    std::string where = origin + " row " + std::to_string(r + 1);
    NewsRecord rec;
    rec.id = field(rows[r], "id");
    if (rec.id.empty()) throw ValidationError(where + ": empty id");
    try {
      rec.date = parse_date(field(rows[r], "date"));
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    rec.text = field(rows[r], "text");
    rec.label = parse_label_field(field(rows[r], "label"), where);
    std::string dim = field(rows[r], "dimension");
    if (!dim.empty()) rec.dimension = parse_dimension(dim);
    corpus.records.push_back(std::move(rec));
  }
  corpus.period = infer_period(corpus.records);
  validate_corpus(corpus);
  return corpus;
}

Corpus parse_corpus_jsonl(const std::string& text, const std::string& origin) {
  Corpus corpus;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos,
                          (eol == std::string::npos ? text.size() : eol) - pos);
    pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::string where = origin + " line " + std::to_string(line_no);

    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ParseError(where + ": not a JSON object");
    }
    NewsRecord rec;
    if (!obj.contains("id") || !obj["id"].is_string() || obj["id"].get<std::string>().empty()) {
      throw ValidationError(where + ": missing or empty 'id'");
    }
    rec.id = obj["id"].get<std::string>();
    if (!obj.contains("date") || !obj["date"].is_string()) {
      throw ParseError(where + ": missing 'date'");
    }
    try {
      rec.date = parse_date(obj["date"].get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (obj.contains("text") && obj["text"].is_string()) {
      rec.text = obj["text"].get<std::string>();
    }
    if (obj.contains("label") && !obj["label"].is_null()) {
      if (!obj["label"].is_number_integer()) {
        throw ValidationError(where + ": label must be 0 or 1");
      }
      int label = obj["label"].get<int>();
      if (label != 0 && label != 1) {
        throw ValidationError(where + ": label must be 0 or 1, got " + std::to_string(label));
      }
      rec.label = label;
    }
    if (obj.contains("dimension") && !obj["dimension"].is_null()) {
      rec.dimension = parse_dimension(obj["dimension"].get<std::string>());
    }
    corpus.records.push_back(std::move(rec));
  }
  corpus.period = infer_period(corpus.records);
  validate_corpus(corpus);
  return corpus;
}

}  // namespace

CorpusFormat guess_format(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "jsonl" || ext == "ndjson") return CorpusFormat::Jsonl;
  return CorpusFormat::Csv;
}

Corpus parse_corpus(const std::string& path, CorpusFormat format) {
  return parse_corpus_text(read_text_file(path), format, path);
}

Corpus parse_corpus_text(const std::string& text, CorpusFormat format,
                         const std::string& origin) {
  return format == CorpusFormat::Csv ? parse_corpus_csv(text, origin)
                                     : parse_corpus_jsonl(text, origin);
}

std::string corpus_to_csv(const Corpus& corpus) {
  std::string out = "id,date,text,label,dimension\n";
  for (const NewsRecord& r : corpus.records) {
    csv::Row row{r.id, format_date(r.date), r.text,
                 r.label ? std::to_string(*r.label) : std::string(),
                 r.dimension ? std::string(to_string(*r.dimension)) : std::string()};
    out += csv::format_row(row);
  }
  return out;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const NewsRecord& r : corpus.records) {
    json obj;
    obj["id"] = r.id;
    obj["date"] = format_date(r.date);
    obj["text"] = r.text;
    obj["label"] = r.label ? json(*r.label) : json(nullptr);
    obj["dimension"] = r.dimension ? json(std::string(to_string(*r.dimension))) : json(nullptr);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::pair<Corpus, Corpus> split_train_val(const Corpus& corpus,
                                          double train_fraction,
                                          std::uint64_t seed) {
  if (corpus.empty()) throw ValidationError("cannot split an empty corpus");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train fraction must lie in (0,1), got " +
                          format_double(train_fraction));
  }

  // Shuffle the sorted id list so that membership is a function of the
  // id set, not of the input order.
  std::vector<std::string_view> ids;
  ids.reserve(corpus.records.size());
  for (const NewsRecord& r : corpus.records) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());

  std::mt19937_64 rng(seed);
  auto bounded = [&rng](std::uint64_t n) {
    // rejection sampling keeps the draw exact and stdlib-independent
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    return r % n;
  };
  for (size_t i = ids.size() - 1; i > 0; --i) {
    std::swap(ids[i], ids[bounded(static_cast<std::uint64_t>(i) + 1)]);
  }

  size_t n = ids.size();
  auto train_size = static_cast<size_t>(
      std::floor(static_cast<double>(n) * train_fraction + 0.5));  // half up
  std::unordered_set<std::string_view> train_ids(ids.begin(),
                                                 ids.begin() + static_cast<long>(train_size));

  Corpus train, val;
  for (const NewsRecord& r : corpus.records) {
    (train_ids.count(r.id) ? train : val).records.push_back(r);
  }
  train.period = infer_period(train.records);
  val.period = infer_period(val.records);
  return {std::move(train), std::move(val)};
}

ResponseMatrix build_response_matrix(const Corpus& corpus) {
  if (!corpus.period.has_value()) {
    throw ValidationError("cannot build a response matrix: corpus period is empty");
  }
  std::string unlabeled;
  for (const NewsRecord& r : corpus.records) {
    if (!r.label) {
      if (!unlabeled.empty()) unlabeled += ", ";
      unlabeled += r.id;
    }
  }
  if (!unlabeled.empty()) {
    throw ValidationError("unlabeled records: " + unlabeled);
  }

  std::vector<MonthKey> months = corpus.period->months();
  std::map<MonthKey, size_t> month_index;
  for (size_t j = 0; j < months.size(); ++j) month_index.emplace(months[j], j);

  std::vector<std::vector<Cell>> columns(months.size());
  for (const NewsRecord& r : corpus.records) {
    size_t j = month_index.at(month_of(r.date));
    columns[j].push_back(*r.label == 1 ? Cell::One : Cell::Zero);
  }

  size_t n_rows = 0;
  for (const auto& c : columns) n_rows = std::max(n_rows, c.size());

  std::vector<std::string> labels;
  labels.reserve(months.size());
  for (const MonthKey& m : months) labels.push_back(m.label());

  ResponseMatrix matrix(std::move(labels), n_rows);
  for (size_t j = 0; j < columns.size(); ++j) {
    for (size_t i = 0; i < columns[j].size(); ++i) matrix.set(i, j, columns[j][i]);
  }
  return matrix;
}

Corpus classify_with_hook(const Corpus& corpus, const TextScorer& scorer) {
  Corpus out = corpus;
  for (NewsRecord& r : out.records) {
    if (r.label) continue;
    double score;
    try {
      score = scorer(r);
    } catch (const std::exception& e) {
      throw ValidationError("scorer failed on record '" + r.id + "': " + e.what());
    }
    if (!std::isfinite(score)) {
      throw ValidationError("scorer failed on record '" + r.id + "': non-finite score");
    }
    r.label = score >= 0.5 ? 1 : 0;
  }
  return out;
}

std::vector<MonthSummary> summarize_by_month(const Corpus& corpus) {
  std::vector<MonthSummary> out;
  if (!corpus.period) return out;
  std::vector<MonthKey> months = corpus.period->months();
  std::map<MonthKey, size_t> index;
  for (size_t j = 0; j < months.size(); ++j) {
    index.emplace(months[j], j);
    out.push_back(MonthSummary{months[j].label(), 0, 0, std::nullopt});
  }
  for (const NewsRecord& r : corpus.records) {
    MonthSummary& s = out[index.at(month_of(r.date))];
    ++s.count;
    if (r.label && *r.label == 1) ++s.positive;
  }
  for (MonthSummary& s : out) {
    if (s.count > 0) {
      s.positive_rate = static_cast<double>(s.positive) / static_cast<double>(s.count);
    }
  }
  return out;
}

}  // namespace esgirt
