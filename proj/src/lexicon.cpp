#include "esgirt/lexicon.hpp"

#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

#include "esgirt/csv.hpp"
#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

double logistic(double x) {
  if (x >= 0) {
    double z = std::exp(-x);
    return 1.0 / (1.0 + z);
  }
  double z = std::exp(x);
  return z / (1.0 + z);
}

// ASCII letters/digits lowercased; bytes >= 0x80 (UTF-8 continuations
// and multi-byte starts) are treated as word characters unchanged.
bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::vector<std::string> LexiconScorer::tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

LexiconScorer LexiconScorer::from_definitions_file(const std::string& path, double gain) {
  return from_definitions_json(read_text_file(path), gain);
}

LexiconScorer LexiconScorer::from_definitions_json(const std::string& json_text,
                                                   double gain) {
  nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ParseError("lexicon definitions: not a JSON object");
  }
  LexiconScorer scorer;
  scorer.gain_ = gain;
  for (const auto& [key, entry] : doc.items()) {
    Dimension dim = parse_dimension(key);
    if (!entry.is_object() || !entry.contains("positive") || !entry.contains("negative")) {
      throw ParseError("lexicon definitions: dimension '" + key +
                       "' needs 'positive' and 'negative' texts");
    }
    Lexicon lex;
    for (const std::string& w : tokenize(entry["positive"].get<std::string>())) {
      lex.positive.insert(w);
    }
    for (const std::string& w : tokenize(entry["negative"].get<std::string>())) {
      lex.negative.insert(w);
    }
    // shared vocabulary carries no signal
    for (auto it = lex.positive.begin(); it != lex.positive.end();) {
      if (lex.negative.count(*it)) {
        lex.negative.erase(*it);
        it = lex.positive.erase(it);
      } else {
        ++it;
      }
    }
    scorer.per_dimension_[dim] = std::move(lex);
  }
  if (scorer.per_dimension_.empty()) {
    throw ParseError("lexicon definitions: no dimensions defined");
  }
  for (const auto& [dim, lex] : scorer.per_dimension_) {
    scorer.pooled_.positive.insert(lex.positive.begin(), lex.positive.end());
    scorer.pooled_.negative.insert(lex.negative.begin(), lex.negative.end());
  }
  return scorer;
}

int LexiconScorer::hit_delta(const std::vector<std::string>& tokens,
                             const Lexicon& lex) const {
  int delta = 0;
  for (const std::string& t : tokens) {
    if (lex.positive.count(t)) ++delta;
    if (lex.negative.count(t)) --delta;
  }
  return delta;
}

double LexiconScorer::score(std::string_view text,
                            std::optional<Dimension> dimension) const {
  const Lexicon* lex = &pooled_;
  if (dimension) {
    auto it = per_dimension_.find(*dimension);
    if (it != per_dimension_.end()) lex = &it->second;
  }
  return logistic(gain_ * hit_delta(tokenize(text), *lex));
}

}  // namespace esgirt
