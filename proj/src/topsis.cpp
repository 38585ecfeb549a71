#include "esgirt/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

using nlohmann::json;

std::string json_value_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_loss_name(const std::string& name) {
  return name.size() >= 4 && name.compare(name.size() - 4, 4, "loss") == 0;
}

void validate_metric_value(const std::string& record_id, const std::string& name,
                           double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("record '" + record_id + "': metric '" + name + "' is not finite");
  }
  if (is_loss_name(name)) {
    if (value < 0) {
      throw ValidationError("record '" + record_id + "': loss '" + name + "' is negative");
    }
  } else if (std::find(standard_criteria().begin(), standard_criteria().end(), name) !=
             standard_criteria().end()) {
    if (value < 0.0 || value > 1.0) {
      throw ValidationError("record '" + record_id + "': metric '" + name +
                            "' must lie in [0,1], got " + format_double(value));
    }
  }
}

}  // namespace

const std::vector<std::string>& standard_criteria() {
  static const std::vector<std::string> names = {
      "train_loss",    "train_accuracy", "val_loss",   "val_accuracy", "val_precision",
      "val_recall",    "val_f1",         "val_auc_roc1", "val_auc_roc2"};
  return names;
}

std::map<std::string, Direction> default_directions() {
  std::map<std::string, Direction> out;
  for (const std::string& name : standard_criteria()) {
    out[name] = is_loss_name(name) ? Direction::Cost : Direction::Benefit;
  }
  return out;
}

ParamGrid ParamGrid::from_json(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("parameters") ||
      !doc["parameters"].is_array()) {
    throw ParseError("param grid: expected {\"parameters\": [...]}");
  }
  ParamGrid grid;
  for (const json& p : doc["parameters"]) {
    if (!p.is_object() || !p.contains("name") || !p.contains("values") ||
        !p["values"].is_array()) {
      throw ParseError("param grid: each parameter needs 'name' and 'values'");
    }
    std::vector<std::string> values;
    for (const json& v : p["values"]) values.push_back(json_value_to_string(v));
    grid.parameters.emplace_back(p["name"].get<std::string>(), std::move(values));
  }
  grid.validate();
  return grid;
}

ParamGrid ParamGrid::load_json(const std::string& path) {
  return from_json(read_text_file(path));
}

void ParamGrid::validate() const {
  std::set<std::string> names;
  for (const auto& [name, values] : parameters) {
    if (!names.insert(name).second) {
      throw ValidationError("param grid: duplicate parameter '" + name + "'");
    }
    if (values.empty()) {
      throw ValidationError("param grid: parameter '" + name + "' has no values");
    }
    std::set<std::string> unique(values.begin(), values.end());
    if (unique.size() != values.size()) {
      throw ValidationError("param grid: parameter '" + name + "' has duplicate values");
    }
  }
}

std::vector<std::string> ParamGrid::names() const {
  std::vector<std::string> out;
  out.reserve(parameters.size());
  for (const auto& [name, values] : parameters) out.push_back(name);
  return out;
}

size_t ParamGrid::combination_count() const {
  size_t count = 1;
  for (const auto& [name, values] : parameters) count *= values.size();
  return parameters.empty() ? 0 : count;
}

std::vector<std::vector<std::string>> enumerate_grid(const ParamGrid& grid) {
  grid.validate();
  std::vector<std::vector<std::string>> out;
  if (grid.parameters.empty()) return out;
  out.reserve(grid.combination_count());
  std::vector<size_t> idx(grid.parameters.size(), 0);
  while (true) {
    std::vector<std::string> combo;
    combo.reserve(idx.size());
    for (size_t k = 0; k < idx.size(); ++k) {
      combo.push_back(grid.parameters[k].second[idx[k]]);
    }
    out.push_back(std::move(combo));
    // odometer: last parameter cycles fastest
    size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++idx[k] < grid.parameters[k].second.size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

Direction parse_direction(const std::string& text) {
  if (text == "benefit") return Direction::Benefit;
  if (text == "cost") return Direction::Cost;
  throw ParseError("direction must be 'benefit' or 'cost', got '" + text + "'");
}

std::string to_string(Direction d) {
  return d == Direction::Benefit ? "benefit" : "cost";
}

std::vector<MetricRecord> parse_metric_records_csv(const std::string& text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError("metric CSV: missing header");
  const csv::Row& header = rows[0];

  const auto& known = standard_criteria();
  std::vector<bool> is_metric(header.size(), false);
  long id_col = -1;
  for (size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "id") {
      id_col = static_cast<long>(c);
    } else if (std::find(known.begin(), known.end(), header[c]) != known.end()) {
      is_metric[c] = true;
    }
  }

  std::vector<MetricRecord> records;
  records.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError("metric CSV row " + std::to_string(r + 1) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(row.size()));
    }
    MetricRecord rec;
    if (id_col >= 0) {
      rec.id = row[static_cast<size_t>(id_col)];
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "run_%06zu", r);
      rec.id = buf;
    }
    for (size_t c = 0; c < header.size(); ++c) {
      if (static_cast<long>(c) == id_col) continue;
      if (is_metric[c]) {
        if (row[c].empty()) continue;  // reported as missing by rank_models
        double v = parse_double_strict(row[c], "metric CSV row " + std::to_string(r + 1) +
                                                   ", column '" + header[c] + "'");
        validate_metric_value(rec.id, header[c], v);
        rec.metrics[header[c]] = v;
      } else {
        rec.params.emplace_back(header[c], row[c]);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MetricRecord> load_metric_records_csv(const std::string& path) {
  return parse_metric_records_csv(read_text_file(path));
}

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives,
                               std::vector<Criterion> criteria,
                               std::vector<std::vector<double>> values)
    : alternatives_(std::move(alternatives)),
      criteria_(std::move(criteria)),
      values_(std::move(values)) {
  if (criteria_.empty()) throw ValidationError("decision matrix: no criteria");
  if (alternatives_.empty()) throw ValidationError("decision matrix: no alternatives");
  if (values_.size() != alternatives_.size()) {
    throw ValidationError("decision matrix: one value row per alternative required");
  }
  std::set<std::string> names;
  double weight_sum = 0;
  for (const Criterion& c : criteria_) {
    if (!names.insert(c.name).second) {
      throw ValidationError("decision matrix: duplicate criterion '" + c.name + "'");
    }
    if (!(c.weight > 0) || !std::isfinite(c.weight)) {
      throw ValidationError("decision matrix: criterion '" + c.name +
                            "' needs a positive finite weight");
    }
    weight_sum += c.weight;
  }
  for (size_t a = 0; a < values_.size(); ++a) {
    if (values_[a].size() != criteria_.size()) {
      throw ValidationError("decision matrix: row for '" + alternatives_[a] +
                            "' has wrong length");
    }
    for (size_t c = 0; c < criteria_.size(); ++c) {
      if (!std::isfinite(values_[a][c])) {
        throw ValidationError("decision matrix: value for '" + alternatives_[a] + "' / '" +
                              criteria_[c].name + "' is not finite");
      }
    }
  }
  normalized_weights_.reserve(criteria_.size());
  for (const Criterion& c : criteria_) normalized_weights_.push_back(c.weight / weight_sum);
}

std::vector<std::vector<double>> normalize(const DecisionMatrix& matrix) {
  size_t n = matrix.alternatives().size(), k = matrix.criteria().size();
  std::vector<std::vector<double>> out(n, std::vector<double>(k));
  for (size_t c = 0; c < k; ++c) {
    double sum_sq = 0;
    for (size_t a = 0; a < n; ++a) sum_sq += matrix.values()[a][c] * matrix.values()[a][c];
    double norm = std::sqrt(sum_sq);
    if (norm == 0.0) {
      throw ValidationError("criterion '" + matrix.criteria()[c].name +
                            "': all-zero column cannot be normalized");
    }
    double w = matrix.normalized_weights()[c];
    for (size_t a = 0; a < n; ++a) out[a][c] = matrix.values()[a][c] / norm * w;
  }
  return out;
}

TopsisResult topsis_score(const DecisionMatrix& matrix) {
  size_t n = matrix.alternatives().size(), k = matrix.criteria().size();
  if (n < 2) {
    throw ValidationError("topsis needs >= 2 alternatives; the ideal best and worst "
                          "coincide for a single one");
  }
  TopsisResult result;
  result.alternatives = matrix.alternatives();
  result.criteria = matrix.criteria();
  result.normalized_weights = matrix.normalized_weights();
  result.normalized = normalize(matrix);

  std::vector<double> best(k), worst(k);
  for (size_t c = 0; c < k; ++c) {
    double lo = result.normalized[0][c], hi = lo;
    for (size_t a = 1; a < n; ++a) {
      lo = std::min(lo, result.normalized[a][c]);
      hi = std::max(hi, result.normalized[a][c]);
    }
    if (matrix.criteria()[c].direction == Direction::Benefit) {
      best[c] = hi;
      worst[c] = lo;
    } else {
      best[c] = lo;
      worst[c] = hi;
    }
    if (lo == hi) {
      result.warnings.push_back("criterion '" + matrix.criteria()[c].name +
                                "' has zero variance and does not discriminate");
    }
  }

  result.d_best.resize(n);
  result.d_worst.resize(n);
  result.score.resize(n);
  for (size_t a = 0; a < n; ++a) {
    double sq_best = 0, sq_worst = 0;
    for (size_t c = 0; c < k; ++c) {
      double db = result.normalized[a][c] - best[c];
      double dw = result.normalized[a][c] - worst[c];
      sq_best += db * db;
      sq_worst += dw * dw;
    }
    result.d_best[a] = std::sqrt(sq_best);
    result.d_worst[a] = std::sqrt(sq_worst);
    double denom = result.d_best[a] + result.d_worst[a];
    // equidistant only when every criterion is degenerate
    result.score[a] = denom == 0.0 ? 0.5 : result.d_worst[a] / denom;
  }

  result.ranking.resize(n);
  std::iota(result.ranking.begin(), result.ranking.end(), size_t{0});
  std::sort(result.ranking.begin(), result.ranking.end(), [&](size_t a, size_t b) {
    if (result.score[a] != result.score[b]) return result.score[a] > result.score[b];
    return result.alternatives[a] < result.alternatives[b];
  });
  return result;
}

TopsisResult rank_models(const std::vector<MetricRecord>& records,
                         const std::map<std::string, double>& weights,
                         const std::map<std::string, Direction>& directions) {
  if (records.size() < 2) {
    throw ValidationError("need >= 2 metric records to rank");
  }
  // criteria in standard order, restricted to the weighted ones
  std::vector<Criterion> criteria;
  for (const std::string& name : standard_criteria()) {
    auto w = weights.find(name);
    if (w == weights.end()) continue;
    auto d = directions.find(name);
    if (d == directions.end()) {
      throw ValidationError("criterion '" + name + "' has a weight but no direction");
    }
    criteria.push_back(Criterion{name, w->second, d->second});
  }
  if (criteria.size() != weights.size()) {
    for (const auto& [name, w] : weights) {
      if (std::find(standard_criteria().begin(), standard_criteria().end(), name) ==
          standard_criteria().end()) {
        throw ValidationError("unknown criterion '" + name + "' in weights");
      }
    }
  }
  if (criteria.empty()) throw ValidationError("weights select no criteria");

  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;
  ids.reserve(records.size());
  values.reserve(records.size());
  for (const MetricRecord& rec : records) {
    std::vector<double> row;
    row.reserve(criteria.size());
    for (const Criterion& c : criteria) {
      auto it = rec.metrics.find(c.name);
      if (it == rec.metrics.end()) {
        throw ValidationError("record '" + rec.id + "': missing metric field '" + c.name + "'");
      }
      row.push_back(it->second);
    }
    ids.push_back(rec.id);
    values.push_back(std::move(row));
  }
  return topsis_score(DecisionMatrix(std::move(ids), std::move(criteria), std::move(values)));
}

WeightSpec parse_weights_json(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("criteria") ||
      !doc["criteria"].is_array()) {
    throw ParseError("weights file: expected {\"criteria\": [...]}");
  }
  WeightSpec spec;
  for (const json& c : doc["criteria"]) {
    if (!c.is_object() || !c.contains("name") || !c.contains("weight") ||
        !c.contains("direction")) {
      throw ParseError("weights file: each criterion needs name, weight, direction");
    }
    spec.criteria.push_back(Criterion{c["name"].get<std::string>(),
                                      c["weight"].get<double>(),
                                      parse_direction(c["direction"].get<std::string>())});
  }
  if (spec.criteria.empty()) throw ValidationError("weights file: no criteria");
  return spec;
}

WeightSpec load_weights_json(const std::string& path) {
  return parse_weights_json(read_text_file(path));
}

std::map<std::string, double> WeightSpec::weight_map() const {
  std::map<std::string, double> out;
  for (const Criterion& c : criteria) out[c.name] = c.weight;
  return out;
}

std::map<std::string, Direction> WeightSpec::direction_map() const {
  std::map<std::string, Direction> out;
  for (const Criterion& c : criteria) out[c.name] = c.direction;
  return out;
}

std::string ranked_csv(const TopsisResult& result) {
  std::string out = "rank,id,score,d_best,d_worst\n";
  for (size_t r = 0; r < result.ranking.size(); ++r) {
    size_t a = result.ranking[r];
    out += std::to_string(r + 1);
    out += ',';
    out += csv::escape(result.alternatives[a]);
    out += ',';
    out += format_double(result.score[a]);
    out += ',';
    out += format_double(result.d_best[a]);
    out += ',';
    out += format_double(result.d_worst[a]);
    out += '\n';
  }
  return out;
}

}  // namespace esgirt
