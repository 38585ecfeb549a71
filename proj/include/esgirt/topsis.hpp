#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace esgirt {

// Hyperparameter grid: ordered (name, admissible values). Values are
// kept verbatim as strings so enumeration output is byte-stable.
struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> parameters;

  // {"parameters":[{"name":..., "values":[...]}]}; numbers allowed,
  // serialized back in their shortest form.
  static ParamGrid from_json(const std::string& json_text);
  static ParamGrid load_json(const std::string& path);

  void validate() const;  // unique names, non-empty duplicate-free value lists
  std::vector<std::string> names() const;
  size_t combination_count() const;
};

// Full Cartesian product; the first declared parameter varies slowest.
// Each combination holds one value per parameter, in declaration order.
std::vector<std::vector<std::string>> enumerate_grid(const ParamGrid& grid);

enum class Direction { Benefit, Cost };

Direction parse_direction(const std::string& text);
std::string to_string(Direction d);

struct Criterion {
  std::string name;
  double weight = 0.0;  // raw weight as supplied, > 0
  Direction direction = Direction::Benefit;
};

// One training run's logged metrics, keyed by criterion name, plus the
// hyperparameters that produced it.
struct MetricRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;  // column order
  std::map<std::string, double> metrics;
};

// The nine standard criteria in report column order.
const std::vector<std::string>& standard_criteria();
// losses are costs, everything else benefits
std::map<std::string, Direction> default_directions();

// CSV: optional "id" column, parameter columns, then metric columns
// (any of the nine standard names present in the header). Rows lacking
// an id get "run_NNNNNN" by file order.
std::vector<MetricRecord> load_metric_records_csv(const std::string& path);
std::vector<MetricRecord> parse_metric_records_csv(const std::string& text);

// Alternatives x criteria table. Weights are renormalized to sum 1 at
// construction; the raw values are kept for reporting.
class DecisionMatrix {
 public:
  DecisionMatrix(std::vector<std::string> alternatives, std::vector<Criterion> criteria,
                 std::vector<std::vector<double>> values);

  const std::vector<std::string>& alternatives() const { return alternatives_; }
  const std::vector<Criterion>& criteria() const { return criteria_; }  // raw weights
  const std::vector<double>& normalized_weights() const { return normalized_weights_; }
  const std::vector<std::vector<double>>& values() const { return values_; }

 private:
  std::vector<std::string> alternatives_;
  std::vector<Criterion> criteria_;
  std::vector<double> normalized_weights_;
  std::vector<std::vector<double>> values_;
};

// Divides each column by its Euclidean norm and multiplies by the
// (renormalized) column weight. Throws ValidationError on an all-zero
// column, naming the criterion.
std::vector<std::vector<double>> normalize(const DecisionMatrix& matrix);

struct TopsisResult {
  std::vector<std::string> alternatives;
  std::vector<std::vector<double>> normalized;  // weighted-normalized rows
  std::vector<double> d_best;
  std::vector<double> d_worst;
  std::vector<double> score;          // d_worst / (d_best + d_worst)
  std::vector<size_t> ranking;        // indices, best first; ties by id
  std::vector<std::string> warnings;  // e.g. zero-variance criteria
  std::vector<Criterion> criteria;    // raw weights as supplied
  std::vector<double> normalized_weights;
};

// Classic TOPSIS: per criterion the ideal best is the max (benefit) or
// min (cost) of the weighted-normalized column, the ideal worst the
// opposite; distances are Euclidean. Needs >= 2 alternatives.
TopsisResult topsis_score(const DecisionMatrix& matrix);

// Builds a DecisionMatrix from metric records (criteria ordered as in
// standard_criteria(), restricted to the keys of `weights`) and scores
// it. A record missing a weighted metric is a ValidationError naming
// the record and field.
TopsisResult rank_models(const std::vector<MetricRecord>& records,
                         const std::map<std::string, double>& weights,
                         const std::map<std::string, Direction>& directions);

// Weights/directions file: {"criteria":[{"name","weight","direction"}]}.
struct WeightSpec {
  std::vector<Criterion> criteria;

  std::map<std::string, double> weight_map() const;
  std::map<std::string, Direction> direction_map() const;
};
WeightSpec load_weights_json(const std::string& path);
WeightSpec parse_weights_json(const std::string& json_text);

// rank,id,score,d_best,d_worst — best first.
std::string ranked_csv(const TopsisResult& result);

}  // namespace esgirt
