#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "esgirt/corpus.hpp"

namespace esgirt {

// Deterministic keyword sentiment scorer. Positive and negative lexica
// are built by tokenizing the per-dimension ESG definition texts
// (JSON map: dimension -> {definition, positive, negative}); the score
// is logistic(gain * (positive hits - negative hits)), so an equal
// count lands exactly on the 0.5 decision threshold.
class LexiconScorer {
 public:
  static LexiconScorer from_definitions_file(const std::string& path, double gain = 1.0);
  static LexiconScorer from_definitions_json(const std::string& json_text, double gain = 1.0);

  // Words appearing in both lexica of a dimension are dropped from both.
  double score(std::string_view text, std::optional<Dimension> dimension) const;
  double score(const NewsRecord& record) const {
    return score(record.text, record.dimension);
  }

  // Lowercased whitespace/punctuation tokenization; multi-byte UTF-8
  // sequences are kept intact.
  static std::vector<std::string> tokenize(std::string_view text);

 private:
  struct Lexicon {
    std::set<std::string> positive;
    std::set<std::string> negative;
  };

  int hit_delta(const std::vector<std::string>& tokens, const Lexicon& lex) const;

  std::map<Dimension, Lexicon> per_dimension_;
  Lexicon pooled_;  // union over dimensions, used when a record has none
  double gain_ = 1.0;
};

}  // namespace esgirt
