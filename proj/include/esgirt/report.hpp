#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "esgirt/corpus.hpp"
#include "esgirt/ingest.hpp"
#include "esgirt/metrics.hpp"
#include "esgirt/rasch.hpp"
#include "esgirt/response_matrix.hpp"
#include "esgirt/topsis.hpp"

namespace esgirt {

// {"items":[{label, difficulty, se, infit, outfit} | {label, dropped_reason}],
//  "persons_summary":..., "convergence":..., "constraints":..., "options":...}
nlohmann::ordered_json fit_report_json(const RaschFit& fit, const FitStatistics& stats,
                                       const RaschOptions& opts);

// Rebuilds labels/difficulties/drop lists from a fit report; enough to
// evaluate curves. Person-level estimates are not round-tripped.
RaschFit fit_from_report_json(const std::string& text);

// "item,infit,outfit" for retained items.
std::string fit_stats_csv(const RaschFit& fit, const FitStatistics& stats);

nlohmann::ordered_json ingest_summary_json(const Corpus& corpus,
                                           const ResponseMatrix& matrix);

// Mirrors the nine standard criterion names; train fields appear only
// when a train prediction set is supplied. precision/recall/f1 are for
// class 1, auc_roc1 is the class-1 AUC, auc_roc2 the class-0 AUC.
nlohmann::ordered_json metrics_report_json(const PredictionSet& val,
                                           const std::optional<PredictionSet>& train);

nlohmann::ordered_json topsis_report_json(const TopsisResult& result,
                                          const std::vector<MetricRecord>& records);

// "lr=2e-5, layers=5, ..." for the top-ranked record.
std::string top_combination_string(const TopsisResult& result,
                                   const std::vector<MetricRecord>& records);

}  // namespace esgirt
