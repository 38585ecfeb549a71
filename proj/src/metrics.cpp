#include "esgirt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

PredictionSet::PredictionSet(std::vector<Prediction> preds) : preds_(std::move(preds)) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(preds_.size());
  for (const Prediction& p : preds_) {
    if (!seen.insert(p.id).second) {
      throw ValidationError("duplicate prediction id '" + p.id + "'");
    }
    if (p.true_label != 0 && p.true_label != 1) {
      throw ValidationError("prediction '" + p.id + "': true_label must be 0 or 1");
    }
    if (p.predicted_label != 0 && p.predicted_label != 1) {
      throw ValidationError("prediction '" + p.id + "': predicted_label must be 0 or 1");
    }
    if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0) {
      throw ValidationError("prediction '" + p.id + "': score must lie in [0,1]");
    }
  }
}

PredictionSet PredictionSet::from_csv(const std::string& text) {
  auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError("prediction CSV: missing header");
  std::unordered_map<std::string, size_t> col;
  for (size_t i = 0; i < rows[0].size(); ++i) col.emplace(rows[0][i], i);
  for (const char* c : {"id", "true_label", "predicted_label", "score"}) {
    if (!col.count(c)) {
      throw ParseError("prediction CSV: header lacks column '" + std::string(c) + "'");
    }
  }
  std::vector<Prediction> preds;
  preds.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    std::string where = "prediction CSV row " + std::to_string(r + 1);
    const csv::Row& row = rows[r];
    auto field = [&](const char* name) -> const std::string& {
      size_t i = col.at(name);
      if (i >= row.size()) throw ParseError(where + ": too few fields");
      return row[i];
    };
    Prediction p;
    p.id = field("id");
    p.true_label = static_cast<int>(parse_long_strict(field("true_label"), where));
    p.predicted_label = static_cast<int>(parse_long_strict(field("predicted_label"), where));
    p.score = parse_double_strict(field("score"), where);
    preds.push_back(std::move(p));
  }
  return PredictionSet(std::move(preds));
}

PredictionSet PredictionSet::load_csv(const std::string& path) {
  return from_csv(read_text_file(path));
}

PredictionSet join_predictions(const std::string& truth_csv_text,
                               const std::string& scored_csv_text) {
  auto truth_rows = csv::parse(truth_csv_text);
  if (truth_rows.empty()) throw ParseError("truth CSV: missing header");
  std::unordered_map<std::string, size_t> tcol;
  for (size_t i = 0; i < truth_rows[0].size(); ++i) tcol.emplace(truth_rows[0][i], i);
  if (!tcol.count("id") || !tcol.count("label")) {
    throw ParseError("truth CSV: needs columns id,label");
  }
  std::unordered_map<std::string, int> truth;
  for (size_t r = 1; r < truth_rows.size(); ++r) {
    std::string where = "truth CSV row " + std::to_string(r + 1);
    const auto& row = truth_rows[r];
    if (row.size() <= std::max(tcol["id"], tcol["label"])) {
      throw ParseError(where + ": too few fields");
    }
    truth[row[tcol["id"]]] =
        static_cast<int>(parse_long_strict(row[tcol["label"]], where));
  }

  auto scored_rows = csv::parse(scored_csv_text);
  if (scored_rows.empty()) throw ParseError("scored CSV: missing header");
  std::unordered_map<std::string, size_t> scol;
  for (size_t i = 0; i < scored_rows[0].size(); ++i) scol.emplace(scored_rows[0][i], i);
  for (const char* c : {"id", "predicted_label", "score"}) {
    if (!scol.count(c)) {
      throw ParseError("scored CSV: needs column '" + std::string(c) + "'");
    }
  }
  std::vector<Prediction> joined;
  for (size_t r = 1; r < scored_rows.size(); ++r) {
    std::string where = "scored CSV row " + std::to_string(r + 1);
    const auto& row = scored_rows[r];
    const std::string& id = row[scol["id"]];
    auto it = truth.find(id);
    if (it == truth.end()) continue;
    Prediction p;
    p.id = id;
    p.true_label = it->second;
    p.predicted_label =
        static_cast<int>(parse_long_strict(row[scol["predicted_label"]], where));
    p.score = parse_double_strict(row[scol["score"]], where);
    joined.push_back(std::move(p));
  }
  if (joined.empty()) {
    throw ValidationError("truth and prediction files share no ids; nothing to join");
  }
  return PredictionSet(std::move(joined));
}

double ConfusionMatrix::accuracy() const {
  return static_cast<double>(tp + tn) / static_cast<double>(total());
}

ConfusionMatrix::RowPercent ConfusionMatrix::row_percent() const {
  auto pct = [](size_t num, size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
  };
  return RowPercent{pct(tn, tn + fp), pct(fp, tn + fp), pct(tp, fn + tp), pct(fn, fn + tp)};
}

ConfusionMatrix confusion(const PredictionSet& preds) {
  if (preds.size() == 0) throw ValidationError("confusion: empty prediction set");
  ConfusionMatrix cm;
  for (const Prediction& p : preds.records()) {
    if (p.true_label == 1) {
      (p.predicted_label == 1 ? cm.tp : cm.fn) += 1;
    } else {
      (p.predicted_label == 0 ? cm.tn : cm.fp) += 1;
    }
  }
  return cm;
}

PrfResult precision_recall_f1(const ConfusionMatrix& cm, int positive_class) {
  if (positive_class != 0 && positive_class != 1) {
    throw ValidationError("positive_class must be 0 or 1");
  }
  // class 0 as positive swaps the roles of the four counts
  double tp = static_cast<double>(positive_class == 1 ? cm.tp : cm.tn);
  double fp = static_cast<double>(positive_class == 1 ? cm.fp : cm.fn);
  double fn = static_cast<double>(positive_class == 1 ? cm.fn : cm.fp);

  PrfResult r;
  if (tp + fp == 0) {
    r.precision_degenerate = true;
  } else {
    r.precision = tp / (tp + fp);
  }
  if (tp + fn == 0) {
    r.recall_degenerate = true;
  } else {
    r.recall = tp / (tp + fn);
  }
  if (r.precision + r.recall == 0) {
    r.f1_degenerate = true;
  } else {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

double auc_roc(const PredictionSet& preds, int positive_class) {
  if (positive_class != 0 && positive_class != 1) {
    throw ValidationError("positive_class must be 0 or 1");
  }
  size_t n = preds.size();
  size_t n_pos = 0;
  for (const Prediction& p : preds.records()) {
    if (p.true_label == positive_class) ++n_pos;
  }
  size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw ValidationError("auc_roc undefined: only one class present");
  }

  // average ranks over score ties, then the Mann-Whitney identity
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  const auto& rec = preds.records();
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return rec[a].score < rec[b].score; });

  double rank_sum_pos = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && rec[order[j]].score == rec[order[i]].score) ++j;
    double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (size_t k = i; k < j; ++k) {
      if (rec[order[k]].true_label == positive_class) rank_sum_pos += avg_rank;
    }
    i = j;
  }
  double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  double u = rank_sum_pos - np * (np + 1.0) / 2.0;
  return u / (np * nn);
}

double cross_entropy(const PredictionSet& preds) {
  if (preds.size() == 0) throw ValidationError("cross_entropy: empty prediction set");
  constexpr double eps = 1e-12;
  double total = 0;
  for (const Prediction& p : preds.records()) {
    double s = std::clamp(p.score, eps, 1.0 - eps);
    total += p.true_label == 1 ? -std::log(s) : -std::log(1.0 - s);
  }
  return total / static_cast<double>(preds.size());
}

}  // namespace esgirt
