#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"
#include "esgirt/ingest.hpp"
#include "esgirt/lexicon.hpp"
#include "esgirt/metrics.hpp"
#include "esgirt/rasch.hpp"
#include "esgirt/report.hpp"
#include "esgirt/response_matrix.hpp"
#include "esgirt/svg_chart.hpp"
#include "esgirt/topsis.hpp"

namespace {

using namespace esgirt;

CorpusFormat resolve_format(const std::string& flag, const std::string& path) {
  if (flag == "csv") return CorpusFormat::Csv;
  if (flag == "jsonl") return CorpusFormat::Jsonl;
  return guess_format(path);
}

void write_json(const std::string& path, const nlohmann::ordered_json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

// month labels are "YYYY-MM"; everything else lands in one group
std::string year_of_label(const std::string& label) {
  auto dash = label.find('-');
  return dash == std::string::npos ? std::string("all") : label.substr(0, dash);
}

struct IngestArgs {
  std::string input, format = "auto", period, matrix_out, summary_out;
};

void run_ingest(const IngestArgs& args) {
  Corpus corpus = parse_corpus(args.input, resolve_format(args.format, args.input));
  if (!args.period.empty()) {
    corpus = restrict_period(corpus, parse_month_range(args.period));
  }
  ResponseMatrix matrix = build_response_matrix(corpus);
  write_text_file(args.matrix_out, matrix.to_csv());
  if (!args.summary_out.empty()) {
    write_json(args.summary_out, ingest_summary_json(corpus, matrix));
  }
  std::cout << "wrote " << matrix.n_rows() << "x" << matrix.n_items() << " matrix to "
            << args.matrix_out << "\n";
}

struct SplitArgs {
  std::string input, format = "auto", train_out, val_out;
  double fraction = 0.9;
  std::uint64_t seed = 0;
};

void run_split(const SplitArgs& args) {
  Corpus corpus = parse_corpus(args.input, resolve_format(args.format, args.input));
  auto [train, val] = split_train_val(corpus, args.fraction, args.seed);
  auto write_split = [](const std::string& path, const Corpus& c) {
    write_text_file(path, guess_format(path) == CorpusFormat::Jsonl ? corpus_to_jsonl(c)
                                                                    : corpus_to_csv(c));
  };
  write_split(args.train_out, train);
  write_split(args.val_out, val);
  std::cout << "split " << corpus.size() << " records into " << train.size() << " train / "
            << val.size() << " val\n";
}

struct ClassifyArgs {
  std::string input, format = "auto", lexicon, output;
  double gain = 1.0;
};

void run_classify(const ClassifyArgs& args) {
  Corpus corpus = parse_corpus(args.input, resolve_format(args.format, args.input));
  LexiconScorer scorer = LexiconScorer::from_definitions_file(args.lexicon, args.gain);
  Corpus labeled = classify_with_hook(
      corpus, [&](const NewsRecord& r) { return scorer.score(r); });
  write_text_file(args.output, guess_format(args.output) == CorpusFormat::Jsonl
                                   ? corpus_to_jsonl(labeled)
                                   : corpus_to_csv(labeled));
  size_t newly = 0;
  for (size_t i = 0; i < corpus.records.size(); ++i) {
    if (!corpus.records[i].label) ++newly;
  }
  std::cout << "labeled " << newly << " of " << corpus.size() << " records\n";
}

struct FitArgs {
  std::string matrix, fit_out, stats_out;
  RaschOptions opts;
  bool allow_nonconverged = false;
};

void run_fit(const FitArgs& args) {
  ResponseMatrix matrix = ResponseMatrix::load_csv(args.matrix);
  RaschFit fit = fit_jmle(matrix, args.opts);
  FitStatistics stats = item_fit(matrix, fit);
  write_json(args.fit_out, fit_report_json(fit, stats, args.opts));
  if (!args.stats_out.empty()) {
    write_text_file(args.stats_out, fit_stats_csv(fit, stats));
  }
  std::cout << (fit.converged ? "converged" : "did not converge") << " after "
            << fit.iterations << " sweeps (max residual " << format_double(fit.max_residual)
            << ")\n";
  if (!fit.converged && !args.allow_nonconverged) {
    throw EstimationError("estimation did not converge within " +
                          std::to_string(args.opts.max_iter) +
                          " sweeps; rerun with --allow-nonconverged to keep the result");
  }
}

struct CurvesArgs {
  std::string fit, curves_out, svg_dir;
  double theta_min = -4.0, theta_max = 4.0;
  int steps = 161;
};

void run_curves(const CurvesArgs& args) {
  RaschFit fit = fit_from_report_json(read_text_file(args.fit));
  CurveTable table = curve_table(fit, args.theta_min, args.theta_max, args.steps);
  write_text_file(args.curves_out, table.to_csv());

  if (!args.svg_dir.empty()) {
    std::filesystem::create_directories(args.svg_dir);
    std::map<std::string, std::vector<size_t>> by_year;
    for (size_t j = 0; j < table.item_labels.size(); ++j) {
      by_year[year_of_label(table.item_labels[j])].push_back(j);
    }
    for (const auto& [year, item_idx] : by_year) {
      LineChart icc_chart("ICC " + year, "Sentiment level (theta)",
                          "P(positive response)");
      icc_chart.set_x_range(args.theta_min, args.theta_max);
      icc_chart.set_y_range(0.0, 1.0);
      LineChart iic_chart("IIC " + year, "Sentiment level (theta)", "Information");
      iic_chart.set_x_range(args.theta_min, args.theta_max);
      iic_chart.set_y_range(0.0, 0.25);
      for (size_t j : item_idx) {
        std::vector<std::pair<double, double>> icc_pts, iic_pts;
        icc_pts.reserve(table.theta_grid.size());
        iic_pts.reserve(table.theta_grid.size());
        for (size_t k = 0; k < table.theta_grid.size(); ++k) {
          icc_pts.emplace_back(table.theta_grid[k], table.icc_values[k][j]);
          iic_pts.emplace_back(table.theta_grid[k], table.iic_values[k][j]);
        }
        icc_chart.add_series(table.item_labels[j], std::move(icc_pts));
        iic_chart.add_series(table.item_labels[j], std::move(iic_pts));
      }
      auto path = [&](const std::string& kind) {
        return (std::filesystem::path(args.svg_dir) / (kind + "_" + year + ".svg")).string();
      };
      write_text_file(path("icc"), icc_chart.render());
      write_text_file(path("iic"), iic_chart.render());
    }
  }
  std::cout << "wrote curves for " << table.item_labels.size() << " items over "
            << table.theta_grid.size() << " grid points\n";
}

struct MetricsArgs {
  std::string pred, truth, train_pred, report_out;
};

void run_metrics(const MetricsArgs& args) {
  PredictionSet val = args.truth.empty()
                          ? PredictionSet::load_csv(args.pred)
                          : join_predictions(read_text_file(args.truth),
                                             read_text_file(args.pred));
  std::optional<PredictionSet> train;
  if (!args.train_pred.empty()) train = PredictionSet::load_csv(args.train_pred);
  nlohmann::ordered_json report = metrics_report_json(val, train);
  write_json(args.report_out, report);
  std::cout << "val_accuracy " << format_double(report["val_accuracy"].get<double>())
            << ", val_f1 " << format_double(report["val_f1"].get<double>()) << "\n";
}

struct TopsisArgs {
  std::string records, weights, ranked_csv_out, ranked_json_out;
};

void run_topsis(const TopsisArgs& args) {
  std::vector<MetricRecord> records = load_metric_records_csv(args.records);
  WeightSpec spec = load_weights_json(args.weights);
  TopsisResult result = rank_models(records, spec.weight_map(), spec.direction_map());
  if (!args.ranked_csv_out.empty()) {
    write_text_file(args.ranked_csv_out, ranked_csv(result));
  }
  if (!args.ranked_json_out.empty()) {
    write_json(args.ranked_json_out, topsis_report_json(result, records));
  }
  std::cout << top_combination_string(result, records) << "\n";
}

struct GridArgs {
  std::string grid, out;
};

void run_grid(const GridArgs& args) {
  ParamGrid grid = ParamGrid::load_json(args.grid);
  auto combos = enumerate_grid(grid);
  if (!args.out.empty()) {
    std::string out_csv;
    out_csv += csv::format_row(grid.names());
    for (const auto& combo : combos) out_csv += csv::format_row(combo);
    write_text_file(args.out, out_csv);
  }
  std::cout << combos.size() << " combinations\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ESG news scoring toolkit: response matrices, Rasch fits, "
               "classification metrics, TOPSIS model ranking"};
  app.require_subcommand(1);
  app.set_config("--config")->description("TOML-style key/value config; flags win");

  IngestArgs ingest_args;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Build the month-item response matrix from a corpus");
  ingest_cmd->add_option("--input", ingest_args.input, "corpus file")->required();
  ingest_cmd->add_option("--format", ingest_args.format, "csv|jsonl|auto");
  ingest_cmd->add_option("--period", ingest_args.period,
                         "restrict to YYYY-MM..YYYY-MM (keeps empty months)");
  ingest_cmd->add_option("--matrix-out", ingest_args.matrix_out, "matrix CSV path")
      ->required();
  ingest_cmd->add_option("--summary-out", ingest_args.summary_out, "summary JSON path");
  ingest_cmd->callback([&] { run_ingest(ingest_args); });

  SplitArgs split_args;
  auto* split_cmd =
      app.add_subcommand("split", "Deterministic train/validation split by record id");
  split_cmd->add_option("--input", split_args.input, "corpus file")->required();
  split_cmd->add_option("--format", split_args.format, "csv|jsonl|auto");
  split_cmd->add_option("--fraction", split_args.fraction, "train fraction in (0,1)");
  split_cmd->add_option("--seed", split_args.seed, "shuffle seed");
  split_cmd->add_option("--train-out", split_args.train_out, "train corpus path")->required();
  split_cmd->add_option("--val-out", split_args.val_out, "validation corpus path")->required();
  split_cmd->callback([&] { run_split(split_args); });

  ClassifyArgs classify_args;
  auto* classify_cmd =
      app.add_subcommand("classify", "Label unlabeled records with the lexicon scorer");
  classify_cmd->add_option("--input", classify_args.input, "corpus file")->required();
  classify_cmd->add_option("--format", classify_args.format, "csv|jsonl|auto");
  classify_cmd->add_option("--lexicon", classify_args.lexicon, "ESG definitions JSON")
      ->required();
  classify_cmd->add_option("--gain", classify_args.gain, "logistic gain on hit delta");
  classify_cmd->add_option("--output", classify_args.output, "labeled corpus path")
      ->required();
  classify_cmd->callback([&] { run_classify(classify_args); });

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the Rasch model to a response matrix");
  fit_cmd->add_option("--matrix", fit_args.matrix, "matrix CSV")->required();
  fit_cmd->add_option("--fit-out", fit_args.fit_out, "fit report JSON path")->required();
  fit_cmd->add_option("--stats-out", fit_args.stats_out, "item fit statistics CSV path");
  fit_cmd->add_option("--tol", fit_args.opts.tol, "score residual tolerance");
  fit_cmd->add_option("--max-iter", fit_args.opts.max_iter, "max Newton sweeps");
  fit_cmd->add_flag("--bias-correction", fit_args.opts.bias_correction,
                    "apply the (L-1)/L difficulty correction");
  fit_cmd->add_flag("--allow-nonconverged", fit_args.allow_nonconverged,
                    "exit 0 even when not converged");
  fit_cmd->callback([&] { run_fit(fit_args); });

  CurvesArgs curves_args;
  auto* curves_cmd =
      app.add_subcommand("curves", "Tabulate ICC/IIC curves and draw per-year SVG charts");
  curves_cmd->add_option("--fit", curves_args.fit, "fit report JSON")->required();
  curves_cmd->add_option("--curves-out", curves_args.curves_out, "curves CSV path")
      ->required();
  curves_cmd->add_option("--svg-dir", curves_args.svg_dir, "directory for SVG charts");
  curves_cmd->add_option("--theta-min", curves_args.theta_min, "grid lower bound");
  curves_cmd->add_option("--theta-max", curves_args.theta_max, "grid upper bound");
  curves_cmd->add_option("--steps", curves_args.steps, "grid points (>= 2)");
  curves_cmd->callback([&] { run_curves(curves_args); });

  MetricsArgs metrics_args;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Evaluate predictions: confusion, PRF, AUC, loss");
  metrics_cmd->add_option("--pred", metrics_args.pred, "validation prediction CSV")
      ->required();
  metrics_cmd->add_option("--truth", metrics_args.truth,
                          "separate truth CSV (id,label) joined to --pred by id");
  metrics_cmd->add_option("--train-pred", metrics_args.train_pred,
                          "training prediction CSV (adds train_* fields)");
  metrics_cmd->add_option("--report-out", metrics_args.report_out, "report JSON path")
      ->required();
  metrics_cmd->callback([&] { run_metrics(metrics_args); });

  TopsisArgs topsis_args;
  auto* topsis_cmd =
      app.add_subcommand("topsis", "Rank training runs by weighted TOPSIS score");
  topsis_cmd->add_option("--records", topsis_args.records, "metric record CSV")->required();
  topsis_cmd->add_option("--weights", topsis_args.weights, "weights/directions JSON")
      ->required();
  topsis_cmd->add_option("--ranked-csv", topsis_args.ranked_csv_out, "ranked CSV path");
  topsis_cmd->add_option("--ranked-json", topsis_args.ranked_json_out, "ranked JSON path");
  topsis_cmd->callback([&] { run_topsis(topsis_args); });

  GridArgs grid_args;
  auto* grid_cmd = app.add_subcommand("grid", "Enumerate a hyperparameter grid");
  grid_cmd->add_option("--grid", grid_args.grid, "grid JSON")->required();
  grid_cmd->add_option("--out", grid_args.out, "combinations CSV path");
  grid_cmd->callback([&] { run_grid(grid_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const EstimationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
