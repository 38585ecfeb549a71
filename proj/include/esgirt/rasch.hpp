#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esgirt/response_matrix.hpp"

namespace esgirt {

// Rasch item characteristic curve: P(X=1 | theta, b) = logistic(theta - b).
// Stable for |theta - b| up to ~700. Throws DomainError on non-finite input.
double icc(double theta, double difficulty);

// Fisher information of a Rasch item, P(1-P). Peaks at 0.25 when theta = b.
double iic(double theta, double difficulty);

struct RaschOptions {
  int max_iter = 200;     // alternating Newton sweeps
  double tol = 1e-6;      // max |score residual| for convergence
  bool bias_correction = false;  // (L-1)/L shrink of final difficulties
};

struct DroppedItem {
  std::string label;
  std::string reason;  // "extreme (all-0)", "extreme (all-1)", "all-missing"
};

struct DroppedRow {
  size_t row;
  std::string reason;
};

// Joint maximum-likelihood fit. Estimates are indexed like the input
// matrix; dropped rows/items carry nullopt and appear in the drop lists.
struct RaschFit {
  std::vector<std::string> item_labels;
  std::vector<std::optional<double>> difficulties;  // mean-zero over retained
  std::vector<std::optional<double>> item_se;
  std::vector<std::optional<double>> abilities;
  std::vector<std::optional<double>> person_se;
  std::vector<DroppedItem> dropped_items;
  std::vector<DroppedRow> dropped_rows;
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;
  bool bias_correction_applied = false;

  size_t n_items() const { return item_labels.size(); }
  size_t n_rows() const { return abilities.size(); }
};

// Alternating Newton-Raphson on the joint log-likelihood, skipping
// missing cells. Extreme rows/columns are dropped (cascading) before
// estimation; difficulties are centered to mean zero every sweep.
// Deterministic: the same matrix always yields the same fit.
// Throws EstimationError when everything is extreme, fewer than 2 rows
// or items survive, or the retained data are disconnected.
RaschFit fit_jmle(const ResponseMatrix& matrix, const RaschOptions& opts = {});

enum class ExtremePolicy {
  Error,        // raw score 0 or max -> ExtremeScoreError
  WleFallback,  // fall back to Warm's weighted-likelihood estimate
};

struct AbilityEstimate {
  double theta = 0.0;
  double se = 0.0;
  bool used_wle = false;
};

// ML ability for one response pattern given fixed item difficulties;
// the unique root of sum(x_j - P_j) = 0, found by safeguarded Newton.
// se = 1/sqrt(sum P(1-P)).
AbilityEstimate estimate_ability(std::span<const Cell> pattern,
                                 std::span<const double> difficulties,
                                 ExtremePolicy policy = ExtremePolicy::Error);

// Infit/outfit mean squares over observed, non-dropped cells.
struct FitStatistics {
  std::vector<std::optional<double>> item_infit;
  std::vector<std::optional<double>> item_outfit;
  std::vector<std::optional<double>> person_infit;
  std::vector<std::optional<double>> person_outfit;
};

FitStatistics item_fit(const ResponseMatrix& matrix, const RaschFit& fit);

// ICC and IIC sampled on an even theta grid (endpoints included),
// retained items only.
struct CurveTable {
  std::vector<double> theta_grid;
  std::vector<std::string> item_labels;
  std::vector<double> item_difficulties;
  // [grid point][item]
  std::vector<std::vector<double>> icc_values;
  std::vector<std::vector<double>> iic_values;

  // "theta,<item>_icc...,<item>_iic..."
  std::string to_csv() const;
};

CurveTable curve_table(const RaschFit& fit, double theta_min = -4.0,
                       double theta_max = 4.0, int steps = 161);

}  // namespace esgirt
