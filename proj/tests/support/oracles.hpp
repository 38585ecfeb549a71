#pragma once

// Independent oracles and deterministic generators for tests. Nothing
// here calls into the library's estimation or scoring paths.

#include <cstdint>
#include <string>
#include <vector>

#include "esgirt/metrics.hpp"
#include "esgirt/response_matrix.hpp"
#include "esgirt/topsis.hpp"

namespace testsupport {

// Fully pinned RNG (splitmix64 stream, explicit double mapping), so
// sequences do not depend on stdlib distribution details.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform01();                      // [0,1)
  double normal();                         // Box-Muller, cached pair
  std::uint64_t bounded(std::uint64_t n);  // [0,n), rejection sampled

 private:
  std::uint64_t splitmix();
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Exhaustive grid maximization of the joint Rasch likelihood for a
// complete 5x3 dichotomous matrix: difficulties on [-4,4] step 0.01
// constrained to mean zero, abilities maximized over the same grid per
// person (exact inner maximum; the per-person log-likelihood is
// strictly concave, so its lattice restriction is unimodal).
std::vector<double> rasch_grid_oracle_5x3(const esgirt::ResponseMatrix& matrix);

// Direct reimplementation of every TOPSIS step with plain loops.
struct BruteTopsis {
  std::vector<double> score;
  std::vector<size_t> ranking;  // indices, best first, ties by id
};
BruteTopsis brute_topsis(const std::vector<std::string>& ids,
                         const std::vector<std::vector<double>>& values,
                         const std::vector<double>& raw_weights,
                         const std::vector<bool>& is_benefit);

// O(n^2) pair enumeration AUC, ties counted 1/2.
double auc_by_pair_enumeration(const esgirt::PredictionSet& preds, int positive_class);

// Bernoulli responses at Rasch model probabilities.
esgirt::ResponseMatrix sample_rasch_matrix(const std::vector<double>& abilities,
                                           const std::vector<double>& difficulties,
                                           const std::vector<std::string>& item_labels,
                                           TestRng& rng);

}  // namespace testsupport
