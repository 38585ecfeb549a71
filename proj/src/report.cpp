#include "esgirt/report.hpp"

#include <algorithm>
#include <cmath>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

using nlohmann::ordered_json;

ordered_json opt(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ordered_json fit_report_json(const RaschFit& fit, const FitStatistics& stats,
                             const RaschOptions& opts) {
  ordered_json items = ordered_json::array();
  for (size_t j = 0; j < fit.n_items(); ++j) {
    ordered_json item;
    item["label"] = fit.item_labels[j];
    if (fit.difficulties[j]) {
      item["difficulty"] = *fit.difficulties[j];
      item["se"] = *fit.item_se[j];
      item["infit"] = opt(stats.item_infit[j]);
      item["outfit"] = opt(stats.item_outfit[j]);
    } else {
      auto it = std::find_if(fit.dropped_items.begin(), fit.dropped_items.end(),
                             [&](const DroppedItem& d) { return d.label == fit.item_labels[j]; });
      item["dropped_reason"] = it != fit.dropped_items.end() ? it->reason : "unknown";
    }
    items.push_back(std::move(item));
  }

  size_t estimated = 0;
  double sum = 0, sum_sq = 0, lo = 0, hi = 0;
  for (const auto& a : fit.abilities) {
    if (!a) continue;
    if (estimated == 0) {
      lo = hi = *a;
    } else {
      lo = std::min(lo, *a);
      hi = std::max(hi, *a);
    }
    ++estimated;
    sum += *a;
    sum_sq += *a * *a;
  }
  ordered_json persons;
  persons["n_rows"] = fit.n_rows();
  persons["estimated"] = estimated;
  persons["dropped"] = fit.dropped_rows.size();
  if (estimated > 0) {
    double mean = sum / static_cast<double>(estimated);
    persons["mean_ability"] = mean;
    persons["sd_ability"] =
        estimated > 1 ? std::sqrt((sum_sq - sum * mean) / static_cast<double>(estimated - 1))
                      : 0.0;
    persons["min_ability"] = lo;
    persons["max_ability"] = hi;
  } else {
    persons["mean_ability"] = nullptr;
    persons["sd_ability"] = nullptr;
    persons["min_ability"] = nullptr;
    persons["max_ability"] = nullptr;
  }

  ordered_json dropped_rows = ordered_json::array();
  for (const DroppedRow& d : fit.dropped_rows) {
    dropped_rows.push_back({{"row", d.row}, {"reason", d.reason}});
  }
  persons["dropped_rows"] = std::move(dropped_rows);

  ordered_json doc;
  doc["items"] = std::move(items);
  doc["persons_summary"] = std::move(persons);
  doc["convergence"] = {{"converged", fit.converged},
                        {"iterations", fit.iterations},
                        {"max_residual", fit.max_residual}};
  doc["constraints"] = {{"centering", "mean-zero"}};
  doc["options"] = {{"tol", opts.tol},
                    {"max_iter", opts.max_iter},
                    {"bias_correction", opts.bias_correction}};
  return doc;
}

RaschFit fit_from_report_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("items") ||
      !doc["items"].is_array()) {
    throw ParseError("fit report: expected {\"items\": [...]}");
  }
  RaschFit fit;
  for (const auto& item : doc["items"]) {
    if (!item.contains("label")) throw ParseError("fit report: item lacks a label");
    fit.item_labels.push_back(item["label"].get<std::string>());
    if (item.contains("difficulty") && item["difficulty"].is_number()) {
      fit.difficulties.emplace_back(item["difficulty"].get<double>());
      fit.item_se.emplace_back(item.contains("se") && item["se"].is_number()
                                   ? std::optional<double>(item["se"].get<double>())
                                   : std::nullopt);
    } else {
      fit.difficulties.emplace_back(std::nullopt);
      fit.item_se.emplace_back(std::nullopt);
      fit.dropped_items.push_back(
          {fit.item_labels.back(),
           item.contains("dropped_reason") ? item["dropped_reason"].get<std::string>()
                                           : "unknown"});
    }
  }
  if (doc.contains("convergence") && doc["convergence"].is_object()) {
    const auto& c = doc["convergence"];
    if (c.contains("converged")) fit.converged = c["converged"].get<bool>();
    if (c.contains("iterations")) fit.iterations = c["iterations"].get<int>();
    if (c.contains("max_residual")) fit.max_residual = c["max_residual"].get<double>();
  }
  return fit;
}

std::string fit_stats_csv(const RaschFit& fit, const FitStatistics& stats) {
  std::string out = "item,infit,outfit\n";
  for (size_t j = 0; j < fit.n_items(); ++j) {
    if (!fit.difficulties[j] || !stats.item_infit[j]) continue;
    out += csv::escape(fit.item_labels[j]);
    out += ',';
    out += format_double(*stats.item_infit[j]);
    out += ',';
    out += format_double(*stats.item_outfit[j]);
    out += '\n';
  }
  return out;
}

ordered_json ingest_summary_json(const Corpus& corpus, const ResponseMatrix& matrix) {
  ordered_json doc;
  doc["period"] = {{"start", corpus.period->start.label()},
                   {"end", corpus.period->end.label()}};
  doc["n_records"] = corpus.records.size();
  doc["n_rows"] = matrix.n_rows();
  doc["n_items"] = matrix.n_items();
  ordered_json months = ordered_json::array();
  for (const MonthSummary& s : summarize_by_month(corpus)) {
    ordered_json m;
    m["month"] = s.month;
    m["count"] = s.count;
    m["positive"] = s.positive;
    m["positive_rate"] = s.positive_rate ? ordered_json(*s.positive_rate)
                                         : ordered_json(nullptr);
    months.push_back(std::move(m));
  }
  doc["months"] = std::move(months);
  // empty months stay in the matrix as all-missing columns; the Rasch
  // fitter drops them with reason "all-missing"
  doc["empty_months_kept"] = true;
  return doc;
}

ordered_json metrics_report_json(const PredictionSet& val,
                                 const std::optional<PredictionSet>& train) {
  ConfusionMatrix cm = confusion(val);
  auto rp = cm.row_percent();
  PrfResult prf = precision_recall_f1(cm, 1);

  ordered_json doc;
  if (train) {
    doc["train_loss"] = cross_entropy(*train);
    doc["train_accuracy"] = confusion(*train).accuracy();
  }
  doc["val_loss"] = cross_entropy(val);
  doc["val_accuracy"] = cm.accuracy();
  doc["val_precision"] = prf.precision;
  doc["val_recall"] = prf.recall;
  doc["val_f1"] = prf.f1;
  doc["val_auc_roc1"] = auc_roc(val, 1);
  doc["val_auc_roc2"] = auc_roc(val, 0);
  doc["confusion"] = {{"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}, {"tp", cm.tp}};
  doc["confusion_row_percent"] = {
      {"class0", {{"correct", rp.class0_correct}, {"wrong", rp.class0_wrong}}},
      {"class1", {{"correct", rp.class1_correct}, {"wrong", rp.class1_wrong}}}};
  ordered_json degenerate = ordered_json::array();
  if (prf.precision_degenerate) degenerate.push_back("val_precision");
  if (prf.recall_degenerate) degenerate.push_back("val_recall");
  if (prf.f1_degenerate) degenerate.push_back("val_f1");
  doc["degenerate"] = std::move(degenerate);
  return doc;
}

ordered_json topsis_report_json(const TopsisResult& result,
                                const std::vector<MetricRecord>& records) {
  ordered_json weights_raw, weights_norm;
  for (size_t c = 0; c < result.criteria.size(); ++c) {
    weights_raw[result.criteria[c].name] = result.criteria[c].weight;
    weights_norm[result.criteria[c].name] = result.normalized_weights[c];
  }

  ordered_json ranking = ordered_json::array();
  for (size_t r = 0; r < result.ranking.size(); ++r) {
    size_t a = result.ranking[r];
    ordered_json row;
    row["rank"] = r + 1;
    row["id"] = result.alternatives[a];
    row["score"] = result.score[a];
    row["d_best"] = result.d_best[a];
    row["d_worst"] = result.d_worst[a];
    if (a < records.size()) {
      ordered_json params;
      for (const auto& [k, v] : records[a].params) params[k] = v;
      row["params"] = std::move(params);
    }
    ranking.push_back(std::move(row));
  }

  ordered_json doc;
  doc["weights_raw"] = std::move(weights_raw);
  doc["weights_normalized"] = std::move(weights_norm);
  doc["warnings"] = result.warnings;
  doc["ranking"] = std::move(ranking);
  return doc;
}

std::string top_combination_string(const TopsisResult& result,
                                   const std::vector<MetricRecord>& records) {
  if (result.ranking.empty()) return "";
  size_t a = result.ranking.front();
  if (a >= records.size()) return result.alternatives[a];
  const MetricRecord& rec = records[a];
  if (rec.params.empty()) return rec.id;
  std::string out;
  for (const auto& [k, v] : rec.params) {
    if (!out.empty()) out += ", ";
    out += k + "=" + v;
  }
  return out;
}

}  // namespace esgirt
