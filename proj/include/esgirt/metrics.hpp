#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace esgirt {

struct Prediction {
  std::string id;
  int true_label = 0;       // {0,1}
  int predicted_label = 0;  // {0,1}
  double score = 0.0;       // P(class 1), in [0,1]
};

// Validated prediction collection: binary labels, finite scores in
// [0,1], unique ids.
class PredictionSet {
 public:
  explicit PredictionSet(std::vector<Prediction> preds);

  // CSV columns id,true_label,predicted_label,score.
  static PredictionSet from_csv(const std::string& text);
  static PredictionSet load_csv(const std::string& path);

  const std::vector<Prediction>& records() const { return preds_; }
  size_t size() const { return preds_.size(); }

 private:
  std::vector<Prediction> preds_;
};

struct ConfusionMatrix {
  size_t tn = 0, fp = 0, fn = 0, tp = 0;

  size_t total() const { return tn + fp + fn + tp; }
  double accuracy() const;
  // Percentages of each true-class row: {correct%, wrong%}.
  struct RowPercent {
    double class0_correct, class0_wrong;
    double class1_correct, class1_wrong;
  };
  RowPercent row_percent() const;
};

ConfusionMatrix confusion(const PredictionSet& preds);

struct PrfResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // zero-denominator cases return 0 and set the matching flag
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;
};

PrfResult precision_recall_f1(const ConfusionMatrix& cm, int positive_class);

// Inner join of a truth file (columns id,label) with a scored file
// (columns id,predicted_label,score), matched on id. Ids missing on
// either side are dropped; an empty intersection is a ValidationError.
PredictionSet join_predictions(const std::string& truth_csv_text,
                               const std::string& scored_csv_text);

// Pair-counting (Mann-Whitney) AUC for `positive_class`, ranking by the
// raw score field; ties count 1/2. Exact, O(n log n) via average ranks.
// The class-0 and class-1 AUCs of the same set sum to 1.
// Throws ValidationError when only one class is present.
double auc_roc(const PredictionSet& preds, int positive_class);

// Mean binary cross-entropy of score against true label, scores
// clipped to [1e-12, 1 - 1e-12].
double cross_entropy(const PredictionSet& preds);

}  // namespace esgirt
