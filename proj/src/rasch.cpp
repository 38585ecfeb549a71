#include "esgirt/rasch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

constexpr double kParamClamp = 10.0;  // iteration bound on theta and b
constexpr double kMaxStep = 1.0;      // Newton step cap per sweep

double logistic(double x) {
  if (x >= 0) {
    double z = std::exp(-x);
    return 1.0 / (1.0 + z);
  }
  double z = std::exp(x);
  return z / (1.0 + z);
}

double clamp_param(double x) { return std::clamp(x, -kParamClamp, kParamClamp); }

struct Retained {
  std::vector<size_t> rows;
  std::vector<size_t> items;
  std::vector<char> row_kept;
  std::vector<char> item_kept;
};

// Drops all-0 / all-1 / all-missing rows and columns, cascading until
// the retained submatrix has none. Their ML parameters are infinite, so
// they can never be estimated.
Retained drop_extremes(const ResponseMatrix& m, std::vector<DroppedItem>& dropped_items,
                       std::vector<DroppedRow>& dropped_rows) {
  size_t R = m.n_rows(), C = m.n_items();
  Retained keep;
  keep.row_kept.assign(R, 1);
  keep.item_kept.assign(C, 1);

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < R; ++i) {
      if (!keep.row_kept[i]) continue;
      size_t obs = 0, ones = 0;
      for (size_t j = 0; j < C; ++j) {
        if (!keep.item_kept[j]) continue;
        Cell c = m.at(i, j);
        if (!is_observed(c)) continue;
        ++obs;
        if (c == Cell::One) ++ones;
      }
      const char* reason = nullptr;
      if (obs == 0) {
        reason = "all-missing";
      } else if (ones == 0) {
        reason = "extreme (all-0)";
      } else if (ones == obs) {
        reason = "extreme (all-1)";
      }
      if (reason) {
        keep.row_kept[i] = 0;
        dropped_rows.push_back({i, reason});
        changed = true;
      }
    }
    for (size_t j = 0; j < C; ++j) {
      if (!keep.item_kept[j]) continue;
      size_t obs = 0, ones = 0;
      for (size_t i = 0; i < R; ++i) {
        if (!keep.row_kept[i]) continue;
        Cell c = m.at(i, j);
        if (!is_observed(c)) continue;
        ++obs;
        if (c == Cell::One) ++ones;
      }
      const char* reason = nullptr;
      if (obs == 0) {
        reason = "all-missing";
      } else if (ones == 0) {
        reason = "extreme (all-0)";
      } else if (ones == obs) {
        reason = "extreme (all-1)";
      }
      if (reason) {
        keep.item_kept[j] = 0;
        dropped_items.push_back({m.items()[j], reason});
        changed = true;
      }
    }
  }
  for (size_t i = 0; i < R; ++i) {
    if (keep.row_kept[i]) keep.rows.push_back(i);
  }
  for (size_t j = 0; j < C; ++j) {
    if (keep.item_kept[j]) keep.items.push_back(j);
  }
  return keep;
}

// Every pair of retained items must be linked through shared rows,
// otherwise the relative difficulties are not identified.
void check_connected(const ResponseMatrix& m, const Retained& keep) {
  size_t k = keep.items.size();
  std::vector<size_t> parent(k);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  std::vector<size_t> col_pos(m.n_items(), SIZE_MAX);
  for (size_t p = 0; p < k; ++p) col_pos[keep.items[p]] = p;

  for (size_t i : keep.rows) {
    size_t first = SIZE_MAX;
    for (size_t j : keep.items) {
      if (!is_observed(m.at(i, j))) continue;
      size_t p = col_pos[j];
      if (first == SIZE_MAX) {
        first = p;
      } else {
        parent[find(p)] = find(first);
      }
    }
  }
  std::vector<std::vector<std::string>> components;
  std::vector<long> comp_index(k, -1);
  for (size_t p = 0; p < k; ++p) {
    size_t root = find(p);
    if (comp_index[root] < 0) {
      comp_index[root] = static_cast<long>(components.size());
      components.emplace_back();
    }
    components[static_cast<size_t>(comp_index[root])].push_back(m.items()[keep.items[p]]);
  }
  if (components.size() > 1) {
    std::string msg = "response data are disconnected; item components:";
    for (const auto& comp : components) {
      msg += " {";
      for (size_t i = 0; i < comp.size(); ++i) {
        if (i) msg += ", ";
        msg += comp[i];
      }
      msg += "}";
    }
    throw EstimationError(msg);
  }
}

}  // namespace

double icc(double theta, double difficulty) {
  if (!std::isfinite(theta) || !std::isfinite(difficulty)) {
    throw DomainError("icc: arguments must be finite");
  }
  return logistic(theta - difficulty);
}

double iic(double theta, double difficulty) {
  double p = icc(theta, difficulty);
  return p * (1.0 - p);
}

RaschFit fit_jmle(const ResponseMatrix& matrix, const RaschOptions& opts) {
  size_t R = matrix.n_rows(), C = matrix.n_items();
  RaschFit fit;
  fit.item_labels = matrix.items();
  fit.difficulties.assign(C, std::nullopt);
  fit.item_se.assign(C, std::nullopt);
  fit.abilities.assign(R, std::nullopt);
  fit.person_se.assign(R, std::nullopt);

  if (R == 0 || C == 0) throw EstimationError("empty response matrix");

  Retained keep = drop_extremes(matrix, fit.dropped_items, fit.dropped_rows);
  if (keep.rows.empty() || keep.items.empty()) {
    throw EstimationError("all rows or all items are extreme; nothing to estimate");
  }
  if (keep.rows.size() < 2 || keep.items.size() < 2) {
    throw EstimationError("need at least 2 non-extreme rows and 2 non-extreme items, have " +
                          std::to_string(keep.rows.size()) + " row(s) and " +
                          std::to_string(keep.items.size()) + " item(s)");
  }
  check_connected(matrix, keep);

  const size_t nR = keep.rows.size(), nC = keep.items.size();

  // raw scores and observed counts over the retained submatrix
  std::vector<double> row_score(nR, 0), row_obs(nR, 0);
  std::vector<double> col_score(nC, 0), col_obs(nC, 0);
  for (size_t a = 0; a < nR; ++a) {
    for (size_t b = 0; b < nC; ++b) {
      Cell c = matrix.at(keep.rows[a], keep.items[b]);
      if (!is_observed(c)) continue;
      row_obs[a] += 1;
      col_obs[b] += 1;
      if (c == Cell::One) {
        row_score[a] += 1;
        col_score[b] += 1;
      }
    }
  }

  std::vector<double> theta(nR), beta(nC);
  for (size_t a = 0; a < nR; ++a) {
    theta[a] = clamp_param(std::log(row_score[a] / (row_obs[a] - row_score[a])));
  }
  double beta_mean = 0;
  for (size_t b = 0; b < nC; ++b) {
    beta[b] = clamp_param(std::log((col_obs[b] - col_score[b]) / col_score[b]));
    beta_mean += beta[b];
  }
  beta_mean /= static_cast<double>(nC);
  for (double& b : beta) b -= beta_mean;

  double residual = std::numeric_limits<double>::infinity();
  int iter = 0;
  while (iter < opts.max_iter) {
    ++iter;
    // persons, one Newton step each (independent given beta)
    for (size_t a = 0; a < nR; ++a) {
      double score = 0, info = 0;
      for (size_t b = 0; b < nC; ++b) {
        Cell c = matrix.at(keep.rows[a], keep.items[b]);
        if (!is_observed(c)) continue;
        double p = logistic(theta[a] - beta[b]);
        score += cell_value(c) - p;
        info += p * (1.0 - p);
      }
      double step = std::clamp(score / info, -kMaxStep, kMaxStep);
      theta[a] = clamp_param(theta[a] + step);
    }
    // items, using the updated abilities
    for (size_t b = 0; b < nC; ++b) {
      double score = 0, info = 0;
      for (size_t a = 0; a < nR; ++a) {
        Cell c = matrix.at(keep.rows[a], keep.items[b]);
        if (!is_observed(c)) continue;
        double p = logistic(theta[a] - beta[b]);
        score += p - cell_value(c);
        info += p * (1.0 - p);
      }
      double step = std::clamp(score / info, -kMaxStep, kMaxStep);
      beta[b] = clamp_param(beta[b] + step);
    }
    // re-center; shifting both keeps every theta - b unchanged
    double c = std::accumulate(beta.begin(), beta.end(), 0.0) / static_cast<double>(nC);
    for (double& b : beta) b -= c;
    for (double& t : theta) t -= c;

    // joint score residual at the current point
    residual = 0;
    std::vector<double> col_expected(nC, 0);
    for (size_t a = 0; a < nR; ++a) {
      double row_expected = 0;
      for (size_t b = 0; b < nC; ++b) {
        Cell cell = matrix.at(keep.rows[a], keep.items[b]);
        if (!is_observed(cell)) continue;
        double p = logistic(theta[a] - beta[b]);
        row_expected += p;
        col_expected[b] += p;
      }
      residual = std::max(residual, std::abs(row_score[a] - row_expected));
    }
    for (size_t b = 0; b < nC; ++b) {
      residual = std::max(residual, std::abs(col_expected[b] - col_score[b]));
    }
    if (residual < opts.tol) break;
  }

  fit.converged = residual < opts.tol;
  fit.iterations = iter;
  fit.max_residual = residual;

  if (opts.bias_correction) {
    double shrink = (static_cast<double>(nC) - 1.0) / static_cast<double>(nC);
    for (double& b : beta) b *= shrink;
    fit.bias_correction_applied = true;
  }

  // standard errors at the reported parameter values
  for (size_t a = 0; a < nR; ++a) {
    double info = 0;
    for (size_t b = 0; b < nC; ++b) {
      if (!is_observed(matrix.at(keep.rows[a], keep.items[b]))) continue;
      double p = logistic(theta[a] - beta[b]);
      info += p * (1.0 - p);
    }
    fit.abilities[keep.rows[a]] = theta[a];
    fit.person_se[keep.rows[a]] = 1.0 / std::sqrt(info);
  }
  for (size_t b = 0; b < nC; ++b) {
    double info = 0;
    for (size_t a = 0; a < nR; ++a) {
      if (!is_observed(matrix.at(keep.rows[a], keep.items[b]))) continue;
      double p = logistic(theta[a] - beta[b]);
      info += p * (1.0 - p);
    }
    fit.difficulties[keep.items[b]] = beta[b];
    fit.item_se[keep.items[b]] = 1.0 / std::sqrt(info);
  }
  return fit;
}

AbilityEstimate estimate_ability(std::span<const Cell> pattern,
                                 std::span<const double> difficulties,
                                 ExtremePolicy policy) {
  if (pattern.size() != difficulties.size()) {
    throw ValidationError("estimate_ability: pattern and difficulties differ in length");
  }
  std::vector<double> b;
  std::vector<int> x;
  for (size_t j = 0; j < pattern.size(); ++j) {
    if (!is_observed(pattern[j])) continue;
    if (!std::isfinite(difficulties[j])) {
      throw DomainError("estimate_ability: non-finite difficulty");
    }
    b.push_back(difficulties[j]);
    x.push_back(cell_value(pattern[j]));
  }
  if (b.empty()) {
    throw ValidationError("estimate_ability: pattern has no observed entries");
  }
  const double m = static_cast<double>(b.size());
  const double raw = static_cast<double>(std::accumulate(x.begin(), x.end(), 0));
  const bool extreme = raw == 0.0 || raw == m;
  if (extreme && policy == ExtremePolicy::Error) {
    throw ExtremeScoreError("extreme raw score " + format_double(raw) + " of " +
                            format_double(m) + ": ML ability is infinite");
  }
  const bool wle = extreme;  // fallback engaged only when ML would diverge

  auto mle_score = [&](double t) {
    double s = raw;
    for (double bj : b) s -= logistic(t - bj);
    return s;
  };
  auto wle_score = [&](double t) {
    double s = raw, info = 0, j_term = 0;
    for (double bj : b) {
      double p = logistic(t - bj);
      s -= p;
      double v = p * (1.0 - p);
      info += v;
      j_term += v * (1.0 - 2.0 * p);
    }
    return s + j_term / (2.0 * info);
  };

  auto [bmin_it, bmax_it] = std::minmax_element(b.begin(), b.end());
  double lo = *bmin_it - 35.0, hi = *bmax_it + 35.0;
  double t;
  if (wle) {
    // plain bisection: the WLE score is monotone but its derivative is
    // messy, and this path only runs for extreme patterns
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
      double mid = 0.5 * (lo + hi);
      (wle_score(mid) > 0 ? lo : hi) = mid;
    }
    t = 0.5 * (lo + hi);
  } else {
    double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / m;
    t = mean_b + std::log(raw / (m - raw));
    for (int i = 0; i < 200; ++i) {
      double s = mle_score(t);
      if (std::abs(s) < 1e-12) break;
      (s > 0 ? lo : hi) = t;
      double info = 0;
      for (double bj : b) {
        double p = logistic(t - bj);
        info += p * (1.0 - p);
      }
      double next = t + s / info;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-14) {
        t = next;
        break;
      }
      t = next;
    }
  }

  double info = 0;
  for (double bj : b) {
    double p = logistic(t - bj);
    info += p * (1.0 - p);
  }
  return AbilityEstimate{t, 1.0 / std::sqrt(info), wle};
}

FitStatistics item_fit(const ResponseMatrix& matrix, const RaschFit& fit) {
  if (matrix.n_items() != fit.n_items() || matrix.n_rows() != fit.n_rows() ||
      matrix.items() != fit.item_labels) {
    throw ValidationError("item_fit: matrix and fit do not match");
  }
  size_t R = matrix.n_rows(), C = matrix.n_items();
  FitStatistics stats;
  stats.item_infit.assign(C, std::nullopt);
  stats.item_outfit.assign(C, std::nullopt);
  stats.person_infit.assign(R, std::nullopt);
  stats.person_outfit.assign(R, std::nullopt);

  std::vector<double> item_sq(C, 0), item_var(C, 0), item_z2(C, 0), item_n(C, 0);
  std::vector<double> person_sq(R, 0), person_var(R, 0), person_z2(R, 0), person_n(R, 0);

  for (size_t i = 0; i < R; ++i) {
    if (!fit.abilities[i]) continue;
    for (size_t j = 0; j < C; ++j) {
      if (!fit.difficulties[j]) continue;
      Cell c = matrix.at(i, j);
      if (!is_observed(c)) continue;
      double p = icc(*fit.abilities[i], *fit.difficulties[j]);
      double v = p * (1.0 - p);
      double sq = (cell_value(c) - p) * (cell_value(c) - p);
      double z2 = sq / v;
      item_sq[j] += sq;
      item_var[j] += v;
      item_z2[j] += z2;
      item_n[j] += 1;
      person_sq[i] += sq;
      person_var[i] += v;
      person_z2[i] += z2;
      person_n[i] += 1;
    }
  }
  for (size_t j = 0; j < C; ++j) {
    if (item_n[j] == 0) continue;
    stats.item_infit[j] = item_sq[j] / item_var[j];
    stats.item_outfit[j] = item_z2[j] / item_n[j];
  }
  for (size_t i = 0; i < R; ++i) {
    if (person_n[i] == 0) continue;
    stats.person_infit[i] = person_sq[i] / person_var[i];
    stats.person_outfit[i] = person_z2[i] / person_n[i];
  }
  return stats;
}

CurveTable curve_table(const RaschFit& fit, double theta_min, double theta_max, int steps) {
  if (!std::isfinite(theta_min) || !std::isfinite(theta_max) || theta_min >= theta_max) {
    throw ValidationError("curve_table: need finite theta_min < theta_max");
  }
  if (steps < 2) throw ValidationError("curve_table: need at least 2 grid points");

  CurveTable table;
  table.theta_grid.resize(static_cast<size_t>(steps));
  double span = theta_max - theta_min;
  for (int k = 0; k < steps; ++k) {
    table.theta_grid[static_cast<size_t>(k)] =
        theta_min + span * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  table.theta_grid.back() = theta_max;

  for (size_t j = 0; j < fit.n_items(); ++j) {
    if (!fit.difficulties[j]) continue;
    table.item_labels.push_back(fit.item_labels[j]);
    table.item_difficulties.push_back(*fit.difficulties[j]);
  }
  table.icc_values.assign(table.theta_grid.size(),
                          std::vector<double>(table.item_labels.size()));
  table.iic_values.assign(table.theta_grid.size(),
                          std::vector<double>(table.item_labels.size()));
  for (size_t k = 0; k < table.theta_grid.size(); ++k) {
    for (size_t j = 0; j < table.item_labels.size(); ++j) {
      double p = icc(table.theta_grid[k], table.item_difficulties[j]);
      table.icc_values[k][j] = p;
      table.iic_values[k][j] = p * (1.0 - p);
    }
  }
  return table;
}

std::string CurveTable::to_csv() const {
  std::string out = "theta";
  for (const std::string& item : item_labels) out += "," + csv::escape(item + "_icc");
  for (const std::string& item : item_labels) out += "," + csv::escape(item + "_iic");
  out += '\n';
  for (size_t k = 0; k < theta_grid.size(); ++k) {
    out += format_double(theta_grid[k]);
    for (size_t j = 0; j < item_labels.size(); ++j) {
      out += ',';
      out += format_double(icc_values[k][j]);
    }
    for (size_t j = 0; j < item_labels.size(); ++j) {
      out += ',';
      out += format_double(iic_values[k][j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace esgirt
