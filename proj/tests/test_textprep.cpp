#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "textml/textprep.hpp"

using namespace textml;

TEST_CASE("tokenize lowercases and splits on non-letters") {
  CHECK(tokenize("Digital Finance 2021!") == std::vector<std::string>{"digital", "finance"});
  CHECK(tokenize("") == std::vector<std::string>{});
  // "e" falls below the minimum token length
  CHECK(tokenize("e-government") == std::vector<std::string>{"government"});
}

TEST_CASE("tokenize folds accented Latin letters and drops unfoldable ones") {
  CHECK(tokenize("Café naïve STRASSE straße") ==
        std::vector<std::string>{"cafe", "naive", "strasse", "strasse"});
  // curly apostrophe separates; the lone "t" is dropped
  CHECK(tokenize("don’t stop") == std::vector<std::string>{"don", "stop"});
  // unfoldable letters vanish without splitting the run
  CHECK(tokenize("ab日本cd") == std::vector<std::string>{"abcd"});
}

TEST_CASE("remove_stopwords filters both lists, preserving order") {
  StopwordSet stops = StopwordSet::standard_only();
  stops.domain = {"digital", "development", "project"};
  CHECK(remove_stopwords({"digital", "finance", "the", "loan"}, stops) ==
        std::vector<std::string>{"finance", "loan"});

  const StopwordSet empty;
  CHECK(remove_stopwords({"alpha", "beta"}, empty) ==
        std::vector<std::string>{"alpha", "beta"});
  CHECK(remove_stopwords({"digital", "the"}, stops) == std::vector<std::string>{});
}

TEST_CASE("lemmatize applies the ordered suffix rules") {
  CHECK(lemmatize_token("services") == "service");
  CHECK(lemmatize_token("data") == "data");
  CHECK(lemmatize_token("policies") == "policy");
  CHECK(lemmatize_token("classes") == "class");
  CHECK(lemmatize_token("glasses") == "glass");
  CHECK(lemmatize_token("projects") == "project");
  CHECK(lemmatize_token("running") == "run");
  CHECK(lemmatize_token("falling") == "fall");    // l is never undoubled
  CHECK(lemmatize_token("planned") == "plan");
  CHECK(lemmatize_token("seed") == "seed");       // stem would be too short
  CHECK(lemmatize_token("children") == "child");  // exception table
  CHECK(lemmatize_token("women") == "woman");
  CHECK(lemmatize_token("access") == "access");   // -ss never stripped
  CHECK(lemmatize({"services", "data"}) == std::vector<std::string>{"service", "data"});
}

TEST_CASE("lemmatize is idempotent on its own output") {
  const std::vector<std::string> words = {
      "services", "policies", "classes",  "glasses", "projects", "running",  "falling",
      "planned",  "seed",     "children", "women",   "data",     "business", "studies",
      "makes",    "uses",     "loans",    "years",   "missing",  "buzzing",  "letting",
      "financed", "needed",   "ties",     "goes",    "analysis", "phones",   "becomes"};
  for (const auto& w : words) {
    const std::string once = lemmatize_token(w);
    CHECK(lemmatize_token(once) == once);
    CHECK(once.size() >= 2);
  }
}

TEST_CASE("preprocess chains the four stages with a second stopword pass") {
  // The shipped domain list covers the lemma forms, so "projects" -> "project"
  // is still removed after lemmatization.
  const StopwordSet stops = StopwordSet::bundled_english();
  const TokenizedDoc out = preprocess(Document{"d", "Developing digital projects"}, stops);
  CHECK(out.tokens.empty());
}

TEST_CASE("preprocess of empty text yields an empty token list") {
  const StopwordSet stops = StopwordSet::bundled_english();
  const TokenizedDoc out = preprocess(Document{"d", ""}, stops);
  CHECK(out.doc_id == "d");
  CHECK(out.tokens.empty());
}

TEST_CASE("preprocess is pure") {
  const StopwordSet stops = StopwordSet::bundled_english();
  const Document doc{"d", "The committees were Planning new Services for 2021 users!"};
  const TokenizedDoc a = preprocess(doc, stops);
  const TokenizedDoc b = preprocess(doc, stops);
  CHECK(a.tokens == b.tokens);
  CHECK(!a.tokens.empty());
}

TEST_CASE("preprocess output contains no uppercase, digits, punctuation, or stopwords") {
  StopwordSet stops = StopwordSet::bundled_english();
  const Document doc{"d", "Finance; e-mail addresses, 42 projects... Ünïted NATIONS data!"};
  const TokenizedDoc out = preprocess(doc, stops);
  for (const auto& t : out.tokens) {
    CHECK(t.size() >= 2);
    CHECK(!stops.contains(t));
    for (char c : t) {
      CHECK(c >= 'a');
      CHECK(c <= 'z');
    }
  }
}

TEST_CASE("removing a stopword can only add tokens elsewhere, never remove them") {
  StopwordSet with = StopwordSet::standard_only();
  with.domain = {"finance", "loan"};
  StopwordSet without = StopwordSet::standard_only();
  without.domain = {"loan"};

  const std::vector<std::string> tokens = {"finance", "loan", "bank", "credit", "finance"};
  const auto filtered_with = remove_stopwords(tokens, with);
  const auto filtered_without = remove_stopwords(tokens, without);
  CHECK(filtered_without.size() >= filtered_with.size());
  // every survivor of the stricter list also survives the looser one
  std::size_t j = 0;
  for (const auto& t : filtered_with) {
    while (j < filtered_without.size() && filtered_without[j] != t) ++j;
    CHECK(j < filtered_without.size());
  }
}

TEST_CASE("domain stopword files ignore comments and enforce the format") {
  const auto path = std::filesystem::temp_directory_path() / "tml_stops.txt";
  {
    std::ofstream out(path);
    out << "# domain terms\n\nDigital\nproject\n";
  }
  StopwordSet stops;
  stops.load_domain_file(path.string());
  CHECK(stops.domain.count("digital") == 1);
  CHECK(stops.domain.count("project") == 1);
  CHECK(stops.domain.size() == 2);

  const auto bad = std::filesystem::temp_directory_path() / "tml_stops_bad.txt";
  {
    std::ofstream out(bad);
    out << "two words\n";
  }
  StopwordSet bad_stops;
  CHECK_THROWS_AS(bad_stops.load_domain_file(bad.string()), ParseError);
}

TEST_CASE("the shipped domain defaults cover the core corpus-wide terms") {
  const StopwordSet stops = StopwordSet::bundled_english();
  for (const char* term : {"digital", "development", "project"}) {
    CHECK(stops.contains(term));
  }
  CHECK(stops.contains("the"));
  CHECK(!stops.contains("finance"));
}
