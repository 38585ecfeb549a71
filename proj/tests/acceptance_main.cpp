// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when
// anything fails. Runs the library directly and the CLI binary through
// the shell; golden files live in tests/golden.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"
#include "esgirt/ingest.hpp"
#include "esgirt/metrics.hpp"
#include "esgirt/rasch.hpp"
#include "esgirt/response_matrix.hpp"
#include "esgirt/topsis.hpp"
#include "support/oracles.hpp"
#include "support/run_cli.hpp"
#include "support/temp_dir.hpp"

using namespace esgirt;
using testsupport::run_cli;
using testsupport::TempDir;
using testsupport::TestRng;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

void require_close(double a, double b, double tol, const std::string& what) {
  if (!(std::abs(a - b) <= tol)) {
    std::ostringstream ss;
    ss << what << ": " << a << " vs " << b << " (tol " << tol << ")";
    throw Failure(ss.str());
  }
}

void require_runtime(double seconds, double limit) {
  if (seconds >= limit) {
    std::ostringstream ss;
    ss << "runtime " << seconds << "s exceeds the " << limit << "s budget";
    throw Failure(ss.str());
  }
}

// ---- criterion 1: logistic identities ------------------------------------

void criterion_logistic() {
  auto t0 = std::chrono::steady_clock::now();
  TestRng rng(101);
  for (int i = 0; i < 10000; ++i) {
    double b = (rng.uniform01() - 0.5) * 12.0;
    double theta = (rng.uniform01() - 0.5) * 12.0;
    require_close(icc(b, b), 0.5, 1e-12, "icc at theta=b");
    require_close(iic(b, b), 0.25, 1e-12, "iic at theta=b");
    double p = icc(theta, b);
    require_close(iic(theta, b), p * (1.0 - p), 1e-12, "iic = P(1-P)");
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require_runtime(dt, 1.0);
}

// ---- criterion 2: oracle equivalence on the 5x3 fixture -------------------

ResponseMatrix fixture_5x3() {
  ResponseMatrix m({"item1", "item2", "item3"}, 5);
  int rows[5][3] = {{1, 1, 0}, {1, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 1, 0}};
  for (size_t i = 0; i < 5; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      m.set(i, j, rows[i][j] ? Cell::One : Cell::Zero);
    }
  }
  return m;
}

void criterion_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  ResponseMatrix m = fixture_5x3();
  std::vector<double> oracle = testsupport::rasch_grid_oracle_5x3(m);

  RaschOptions opts;
  opts.tol = 1e-10;
  RaschFit fit = fit_jmle(m, opts);
  require(fit.converged, "fit did not converge");
  for (size_t j = 0; j < 3; ++j) {
    require(fit.difficulties[j].has_value(), "difficulty missing");
    require_close(*fit.difficulties[j], oracle[j], 1e-2, "difficulty vs grid oracle");
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require_runtime(dt, 10.0);
}

// ---- criterion 3: parameter recovery and permutation invariance -----------

void criterion_recovery() {
  auto t0 = std::chrono::steady_clock::now();
  const size_t n_persons = 2000, n_items = 12;
  std::vector<double> b_true(n_items);
  for (size_t j = 0; j < n_items; ++j) {
    b_true[j] = -2.0 + 4.0 * static_cast<double>(j) / static_cast<double>(n_items - 1);
  }
  TestRng rng(7131);
  std::vector<double> theta_true(n_persons);
  for (double& t : theta_true) t = rng.normal();
  std::vector<std::string> labels;
  for (size_t j = 0; j < n_items; ++j) labels.push_back("m" + std::to_string(j + 1));
  ResponseMatrix m = testsupport::sample_rasch_matrix(theta_true, b_true, labels, rng);

  RaschOptions opts;
  opts.bias_correction = true;
  opts.tol = 1e-8;
  RaschFit fit = fit_jmle(m, opts);
  require(fit.converged, "recovery fit did not converge");

  double sq = 0;
  for (size_t j = 0; j < n_items; ++j) {
    require(fit.difficulties[j].has_value(), "item dropped unexpectedly");
    sq += (*fit.difficulties[j] - b_true[j]) * (*fit.difficulties[j] - b_true[j]);
  }
  double rmse = std::sqrt(sq / static_cast<double>(n_items));
  require(rmse < 0.1, "RMSE(b_hat, b_true) = " + format_double(rmse) + " >= 0.1");

  // permutation invariance on the same data
  std::vector<size_t> row_perm(n_persons);
  std::iota(row_perm.begin(), row_perm.end(), size_t{0});
  std::reverse(row_perm.begin(), row_perm.end());
  std::vector<size_t> col_perm(n_items);
  for (size_t j = 0; j < n_items; ++j) col_perm[j] = (j + 5) % n_items;

  std::vector<std::string> plabels;
  for (size_t j : col_perm) plabels.push_back(labels[j]);
  ResponseMatrix pm(plabels, n_persons);
  for (size_t i = 0; i < n_persons; ++i) {
    for (size_t j = 0; j < n_items; ++j) {
      pm.set(i, j, m.at(row_perm[i], col_perm[j]));
    }
  }
  RaschFit pfit = fit_jmle(pm, opts);
  for (size_t j = 0; j < n_items; ++j) {
    require_close(*pfit.difficulties[j], *fit.difficulties[col_perm[j]], 1e-6,
                  "difficulty changed under permutation");
  }
  for (size_t i = 0; i < n_persons; ++i) {
    bool a = pfit.abilities[i].has_value();
    bool b = fit.abilities[row_perm[i]].has_value();
    require(a == b, "drop pattern changed under permutation");
    if (a) {
      require_close(*pfit.abilities[i], *fit.abilities[row_perm[i]], 1e-5,
                    "ability changed under permutation");
    }
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require_runtime(dt, 30.0);
}

// ---- criterion 4: split arithmetic ----------------------------------------

void criterion_split() {
  Corpus corpus;
  for (int i = 0; i < 365; ++i) {
    NewsRecord r;
    r.id = "n" + std::to_string(i);
    r.date = Date{2022, 6, 15};
    r.label = i % 2;
    corpus.records.push_back(std::move(r));
  }
  corpus.period = MonthRange{{2022, 6}, {2022, 6}};
  auto [train, val] = split_train_val(corpus, 0.9, 42);
  require(train.size() == 329, "train size " + std::to_string(train.size()) + " != 329");
  require(val.size() == 36, "val size " + std::to_string(val.size()) + " != 36");
}

// ---- criterion 5: grid count ----------------------------------------------

void criterion_grid() {
  ParamGrid grid;
  grid.parameters = {
      {"lr", {"1e-5", "2e-5", "3e-5"}},   {"layers", {"2", "5", "10"}},
      {"hidden", {"256", "512", "768"}},  {"batch", {"5", "10", "20"}},
      {"epochs", {"2", "5", "10"}},       {"max_len", {"50", "100", "200"}},
  };
  auto combos = enumerate_grid(grid);
  require(combos.size() == 729,
          "grid size " + std::to_string(combos.size()) + " != 729");
  std::set<std::vector<std::string>> unique(combos.begin(), combos.end());
  require(unique.size() == 729, "grid contains duplicates");
}

// ---- criterion 6: topsis ---------------------------------------------------

void criterion_topsis() {
  auto t0 = std::chrono::steady_clock::now();
  const auto& names = standard_criteria();
  const std::vector<double> table3 = {0.1, 0.1, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1, 0.1};

  // brute-force oracle equality on 10 random 10x9 matrices
  TestRng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> values;
    std::vector<MetricRecord> records;
    for (int a = 0; a < 10; ++a) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "run_%02d", a);
      MetricRecord rec;
      rec.id = buf;
      std::vector<double> row;
      for (size_t c = 0; c < 9; ++c) {
        double v = (c == 0 || c == 2) ? 0.01 + 2.0 * rng.uniform01()
                                      : 0.01 + 0.98 * rng.uniform01();
        rec.metrics[names[c]] = v;
        row.push_back(v);
      }
      ids.push_back(buf);
      values.push_back(row);
      records.push_back(std::move(rec));
    }
    std::map<std::string, double> weights;
    for (size_t c = 0; c < 9; ++c) weights[names[c]] = table3[c];
    TopsisResult result = rank_models(records, weights, default_directions());

    std::vector<bool> is_benefit;
    for (const auto& n : names) {
      is_benefit.push_back(default_directions().at(n) == Direction::Benefit);
    }
    auto oracle = testsupport::brute_topsis(ids, values, table3, is_benefit);
    for (size_t a = 0; a < 10; ++a) {
      require_close(result.score[a], oracle.score[a], 1e-12, "score vs brute oracle");
    }
    require(result.ranking == oracle.ranking, "ranking differs from brute oracle");
  }

  // dominance fixture scores (1, 0)
  DecisionMatrix dom({"A", "B"},
                     {{"acc", 0.6, Direction::Benefit}, {"loss", 0.4, Direction::Cost}},
                     {{0.9, 0.1}, {0.8, 0.1}});
  TopsisResult dr = topsis_score(dom);
  require_close(dr.score[0], 1.0, 1e-12, "dominant score");
  require_close(dr.score[1], 0.0, 1e-12, "dominated score");

  // column-scaling invariance at 1e-12
  std::vector<std::vector<double>> vals = {{0.8, 0.3, 0.5}, {0.6, 0.7, 0.2}, {0.4, 0.5, 0.9}};
  std::vector<Criterion> crit = {{"a", 0.5, Direction::Benefit},
                                 {"b", 0.3, Direction::Cost},
                                 {"c", 0.2, Direction::Benefit}};
  std::vector<std::string> ids3 = {"x", "y", "z"};
  TopsisResult base = topsis_score(DecisionMatrix(ids3, crit, vals));
  for (auto& row : vals) row[1] *= 37.5;
  TopsisResult scaled = topsis_score(DecisionMatrix(ids3, crit, vals));
  for (size_t a = 0; a < 3; ++a) {
    require_close(base.score[a], scaled.score[a], 1e-12, "column scaling changed a score");
  }

  // Table 3 weights accepted as given and renormalized, both recorded
  std::vector<Criterion> t3;
  for (size_t c = 0; c < 9; ++c) {
    t3.push_back({names[c], table3[c],
                  (c == 0 || c == 2) ? Direction::Cost : Direction::Benefit});
  }
  std::vector<std::vector<double>> two = {
      {0.3, 0.92, 0.4, 0.9, 0.88, 0.91, 0.89, 0.95, 0.05},
      {0.2, 0.95, 0.35, 0.93, 0.91, 0.9, 0.92, 0.97, 0.03}};
  TopsisResult wr = topsis_score(DecisionMatrix({"A", "B"}, t3, two));
  double raw_sum = 0, norm_sum = 0;
  for (size_t c = 0; c < 9; ++c) {
    require_close(wr.criteria[c].weight, table3[c], 0.0, "raw weight not recorded");
    require_close(wr.normalized_weights[c], table3[c] / 1.1, 1e-12,
                  "weight not renormalized by the 1.1 sum");
    raw_sum += wr.criteria[c].weight;
    norm_sum += wr.normalized_weights[c];
  }
  require_close(raw_sum, 1.1, 1e-12, "raw weights should sum to 1.1");
  require_close(norm_sum, 1.0, 1e-9, "normalized weights should sum to 1");

  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require_runtime(dt, 1.0);
}

// ---- criterion 7: metrics --------------------------------------------------

void criterion_metrics() {
  // confusion percentages from tp=37, fn=1
  std::vector<Prediction> preds;
  int id = 0;
  auto add = [&](int y, int yhat, double s) {
    preds.push_back(Prediction{"p" + std::to_string(id++), y, yhat, s});
  };
  for (int k = 0; k < 60; ++k) add(0, 0, 0.1);
  for (int k = 0; k < 37; ++k) add(1, 1, 0.9);
  add(1, 0, 0.2);
  ConfusionMatrix cm = confusion(PredictionSet(preds));
  auto rp = cm.row_percent();
  require(std::abs(rp.class1_correct - 97.37) < 0.01, "class-1 correct % off");
  require(std::abs(rp.class1_wrong - 2.63) < 0.01, "class-1 wrong % off");
  require_close(rp.class0_correct, 100.0, 1e-9, "class-0 correct %");

  // rank AUC == exhaustive pair enumeration on 50 random 20-record sets
  TestRng rng(707);
  int checked = 0;
  while (checked < 50) {
    std::vector<Prediction> sample;
    bool has0 = false, has1 = false;
    for (int i = 0; i < 20; ++i) {
      int y = rng.uniform01() < 0.5 ? 0 : 1;
      has0 |= y == 0;
      has1 |= y == 1;
      double s = static_cast<double>(rng.bounded(11)) / 10.0;
      sample.push_back(Prediction{"s" + std::to_string(i), y, y, s});
    }
    if (!has0 || !has1) continue;
    ++checked;
    PredictionSet set(std::move(sample));
    for (int cls : {0, 1}) {
      require_close(auc_roc(set, cls), testsupport::auc_by_pair_enumeration(set, cls), 1e-12,
                    "rank AUC vs pair enumeration");
    }
  }

  // cross-entropy of all-0.5 scores
  std::vector<Prediction> half;
  for (int i = 0; i < 9; ++i) {
    half.push_back(Prediction{"h" + std::to_string(i), i % 2, i % 2, 0.5});
  }
  require_close(cross_entropy(PredictionSet(half)), std::log(2.0), 1e-12,
                "cross-entropy of 0.5 scores");
}

// ---- criterion 8: cli determinism and golden files ------------------------

std::string slurp(const std::string& path) { return read_text_file(path); }

void criterion_cli() {
  const std::string fixtures = ESGIRT_FIXTURE_DIR;
  const std::string golden = ESGIRT_GOLDEN_DIR;
  const std::string data = ESGIRT_DATA_DIR;

  TempDir a("acc_a"), b("acc_b");
  // corpus for subcommands not covered by the golden pipeline
  std::string labeled_corpus = "id,date,text,label,dimension\n";
  for (int i = 0; i < 40; ++i) {
    labeled_corpus += "c" + std::to_string(i) + ",2022-0" + std::to_string(1 + i % 3) +
                      "-1" + std::to_string(i % 9) + ",," + std::to_string((i / 2) % 2) +
                      ",\n";
  }
  std::string unlabeled_corpus =
      "id,date,text,label,dimension\n"
      "u1,2022-01-05,melhoria da eficiência energética,,Environment\n"
      "u2,2022-01-06,aumento da poluição e má gestão da água,,Environment\n"
      "u3,2022-02-07,governança corporativa forte,,Governance\n";
  std::string preds =
      "id,true_label,predicted_label,score\n"
      "a,1,1,0.9\nb,0,0,0.2\nc,1,1,0.7\nd,0,1,0.55\ne,1,0,0.35\nf,0,0,0.15\n";

  auto run_all = [&](const TempDir& dir) {
    write_text_file(dir.file("labeled.csv"), labeled_corpus);
    write_text_file(dir.file("unlabeled.csv"), unlabeled_corpus);
    write_text_file(dir.file("preds.csv"), preds);

    auto must = [&](const std::string& args) {
      auto r = run_cli(args);
      require(r.exit_code == 0, "cli failed (" + args + "): " + r.output);
      return r;
    };
    must("ingest --input " + fixtures + "/corpus_small.csv --matrix-out " + dir.file("m.csv") +
         " --summary-out " + dir.file("s.json"));
    must("split --input " + dir.file("labeled.csv") + " --fraction 0.8 --seed 11 "
         "--train-out " + dir.file("train.csv") + " --val-out " + dir.file("val.csv"));
    must("classify --input " + dir.file("unlabeled.csv") + " --lexicon " + data +
         "/esg_definitions.json --output " + dir.file("classified.csv"));
    must("fit --matrix " + dir.file("m.csv") + " --fit-out " + dir.file("fit.json") +
         " --stats-out " + dir.file("stats.csv"));
    must("curves --fit " + dir.file("fit.json") + " --curves-out " + dir.file("curves.csv") +
         " --svg-dir " + dir.path().string());
    must("metrics --pred " + dir.file("preds.csv") + " --report-out " + dir.file("rep.json"));
    must("topsis --records " + fixtures + "/metric_records.csv --weights " + data +
         "/topsis_weights.json --ranked-csv " + dir.file("ranked.csv") + " --ranked-json " +
         dir.file("ranked.json"));
    must("grid --grid " + data + "/param_grid.json --out " + dir.file("combos.csv"));
  };
  run_all(a);
  run_all(b);

  const char* outputs[] = {"m.csv",      "s.json",       "train.csv",  "val.csv",
                           "classified.csv", "fit.json", "stats.csv",  "curves.csv",
                           "icc_2022.svg",   "iic_2022.svg", "rep.json", "ranked.csv",
                           "ranked.json",    "combos.csv"};
  for (const char* name : outputs) {
    require(slurp(a.file(name)) == slurp(b.file(name)),
            std::string("output differs between identical runs: ") + name);
  }

  // committed golden files
  struct GoldenPair {
    const char* produced;
    const char* golden;
  } pairs[] = {
      {"m.csv", "matrix.csv"},      {"fit.json", "fit.json"},
      {"curves.csv", "curves.csv"}, {"icc_2022.svg", "icc_2022.svg"},
      {"iic_2022.svg", "iic_2022.svg"}, {"ranked.csv", "ranked.csv"},
  };
  for (const auto& p : pairs) {
    require(slurp(a.file(p.produced)) == slurp(golden + "/" + p.golden),
            std::string("golden mismatch: ") + p.golden);
  }
}

// ---- criterion 9: end-to-end smoke ----------------------------------------

void criterion_smoke() {
  auto t0 = std::chrono::steady_clock::now();
  TempDir dir("smoke");
  TestRng rng(90210);

  // about 8,000 records across 2022-2023, month sizes and positive
  // rates deliberately uneven
  std::string corpus = "id,date,label\n";
  size_t total = 0;
  int month_idx = 0;
  for (int year : {2022, 2023}) {
    for (int month = 1; month <= 12; ++month, ++month_idx) {
      size_t count = 300 + rng.bounded(70);
      double pos_rate = 0.35 + 0.3 * rng.uniform01();
      for (size_t i = 0; i < count; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "s%zu,%d-%02d-%02d,%d\n", total++, year, month,
                      static_cast<int>(1 + rng.bounded(28)),
                      rng.uniform01() < pos_rate ? 1 : 0);
        corpus += buf;
      }
    }
  }
  require(total > 7500 && total < 9000, "smoke corpus size out of range");
  write_text_file(dir.file("corpus.csv"), corpus);

  auto must = [&](const std::string& args) {
    auto r = run_cli(args);
    require(r.exit_code == 0, "cli failed (" + args + "): " + r.output);
    return r;
  };
  must("ingest --input " + dir.file("corpus.csv") + " --matrix-out " + dir.file("m.csv") +
       " --summary-out " + dir.file("s.json"));
  must("fit --matrix " + dir.file("m.csv") + " --fit-out " + dir.file("fit.json") +
       " --stats-out " + dir.file("stats.csv") + " --allow-nonconverged");
  must("curves --fit " + dir.file("fit.json") + " --curves-out " + dir.file("curves.csv") +
       " --svg-dir " + dir.path().string());

  auto fitdoc = nlohmann::json::parse(slurp(dir.file("fit.json")));
  require(fitdoc["items"].size() == 24, "expected 24 items in the smoke fit");
  require(fitdoc["convergence"]["converged"].get<bool>(), "smoke fit did not converge");
  require(slurp(dir.file("icc_2022.svg")).find("<polyline") != std::string::npos,
          "icc svg has no series");
  require(slurp(dir.file("iic_2023.svg")).find("<polyline") != std::string::npos,
          "iic svg has no series");

  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require_runtime(dt, 60.0);
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* name;
    std::function<void()> body;
  };
  const Entry entries[] = {
      {1, "logistic identities (icc/iic, 10k-point sweep)", criterion_logistic},
      {2, "rasch vs brute-force likelihood grid oracle (5x3)", criterion_oracle},
      {3, "parameter recovery 2000x12 + permutation invariance", criterion_recovery},
      {4, "split arithmetic 365 @ 0.9 -> (329, 36)", criterion_split},
      {5, "hyperparameter grid enumerates 729 combinations", criterion_grid},
      {6, "topsis oracle equality, dominance, scaling, weights", criterion_topsis},
      {7, "metrics: confusion %, AUC pair equality, ln 2 loss", criterion_metrics},
      {8, "cli determinism and golden files", criterion_cli},
      {9, "end-to-end smoke on a 24-month ~8k corpus", criterion_smoke},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
      e.body();
    } catch (const std::exception& ex) {
      verdict = "FAIL";
      detail = ex.what();
      ++failures;
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", verdict.c_str(), e.number, e.name, dt,
                detail.empty() ? "" : " -- ", detail.c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
