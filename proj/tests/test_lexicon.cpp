#include <doctest.h>

#include "esgirt/errors.hpp"
#include "esgirt/ingest.hpp"
#include "esgirt/lexicon.hpp"

using namespace esgirt;

namespace {

const char* kTinyDefinitions = R"({
  "Environment": {
    "definition": "indicadores ambientais",
    "positive": "lucro recorde sustentável avanço",
    "negative": "multa derrame poluição queda"
  }
})";

}  // namespace

TEST_CASE("tokenizer lowercases ASCII and keeps UTF-8 sequences whole") {
  auto tokens = LexiconScorer::tokenize("Multa, por derrame; Poluição!");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0] == "multa");
  CHECK(tokens[1] == "por");
  CHECK(tokens[2] == "derrame");
  CHECK(tokens[3] == "poluição");
  CHECK(LexiconScorer::tokenize("  ,;.  ").empty());
}

TEST_CASE("lexicon scorer matches hand-computed logistic scores") {
  LexiconScorer scorer = LexiconScorer::from_definitions_json(kTinyDefinitions);
  auto dim = Dimension::Environment;

  // hand evaluation: hits = positive matches - negative matches,
  // score = 1/(1+exp(-hits))
  CHECK(scorer.score("lucro recorde no trimestre", dim) ==
        doctest::Approx(0.8807970779778823).epsilon(1e-12));  // +2
  CHECK(scorer.score("multa por derrame de óleo", dim) ==
        doctest::Approx(0.11920292202211755).epsilon(1e-12));  // -2
  CHECK(scorer.score("queda na produção após multa", dim) ==
        doctest::Approx(0.11920292202211755).epsilon(1e-12));  // -2
  CHECK(scorer.score("avanço sustentável com lucro", dim) ==
        doctest::Approx(0.9525741268224334).epsilon(1e-12));  // +3
  CHECK(scorer.score("sem palavras do dicionario aqui", dim) == doctest::Approx(0.5));  // 0
  CHECK(scorer.score("poluição compensada por avanço notável", dim) ==
        doctest::Approx(0.5));  // +1 -1
}

TEST_CASE("classifying a 6-record corpus matches the hand-computed labels") {
  LexiconScorer scorer = LexiconScorer::from_definitions_json(kTinyDefinitions);
  const char* texts[6] = {
      "lucro recorde no trimestre",               // +2 -> 1
      "multa por derrame de óleo",                // -2 -> 0
      "queda na produção após multa",             // -2 -> 0
      "avanço sustentável com lucro",             // +3 -> 1
      "sem palavras do dicionario aqui",          //  0 -> 0.5 -> 1
      "poluição compensada por avanço notável",   // +1-1 -> 0.5 -> 1
  };
  int expected[6] = {1, 0, 0, 1, 1, 1};

  Corpus corpus;
  for (int i = 0; i < 6; ++i) {
    NewsRecord r;
    r.id = "t" + std::to_string(i);
    r.date = parse_date("2022-01-0" + std::to_string(i + 1));
    r.text = texts[i];
    r.dimension = Dimension::Environment;
    corpus.records.push_back(std::move(r));
  }
  corpus.period = MonthRange{{2022, 1}, {2022, 1}};

  Corpus labeled =
      classify_with_hook(corpus, [&](const NewsRecord& r) { return scorer.score(r); });
  for (int i = 0; i < 6; ++i) {
    REQUIRE(labeled.records[static_cast<size_t>(i)].label.has_value());
    CHECK(*labeled.records[static_cast<size_t>(i)].label == expected[i]);
  }
}

TEST_CASE("unknown dimension falls back to the pooled lexicon") {
  LexiconScorer scorer = LexiconScorer::from_definitions_json(kTinyDefinitions);
  CHECK(scorer.score("lucro recorde", std::nullopt) > 0.5);
  CHECK(scorer.score("multa queda", std::nullopt) < 0.5);
}

TEST_CASE("gain steepens the logistic") {
  LexiconScorer mild = LexiconScorer::from_definitions_json(kTinyDefinitions, 0.5);
  LexiconScorer sharp = LexiconScorer::from_definitions_json(kTinyDefinitions, 3.0);
  auto dim = Dimension::Environment;
  CHECK(mild.score("lucro", dim) < sharp.score("lucro", dim));
  CHECK(mild.score("multa", dim) > sharp.score("multa", dim));
}

TEST_CASE("shipped ESG definitions load and separate obvious texts") {
  LexiconScorer scorer =
      LexiconScorer::from_definitions_file(std::string(ESGIRT_DATA_DIR) + "/esg_definitions.json");
  CHECK(scorer.score("melhoria da eficiência energética e redução da poluição",
                     Dimension::Environment) > 0.5);
  CHECK(scorer.score("problemas com suborno e corrupção no conselho",
                     Dimension::Governance) < 0.5);
}

TEST_CASE("malformed definitions are rejected") {
  CHECK_THROWS_AS(LexiconScorer::from_definitions_json("[]"), ParseError);
  CHECK_THROWS_AS(LexiconScorer::from_definitions_json("{\"Environment\": {}}"), ParseError);
  CHECK_THROWS_AS(LexiconScorer::from_definitions_json("{}"), ParseError);
}
