#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rrp/errors.hpp"
#include "rrp/textprep.hpp"

using namespace rrp;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize lowercases, splits on non-letters and drops short tokens") {
  CHECK(tokenize("Loved it! A great documentary.") == Tokens{"loved", "it", "great", "documentary"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("McDonald's 2004") == Tokens{"mcdonald"});
  CHECK(tokenize("caf\xc3\xa9 sea-world") == Tokens{"caf", "sea", "world"});
}

TEST_CASE("tokenize is idempotent on its own output") {
  Rng rng(3);
  const std::string alphabet = "abcXYZ .,!?'-0123\n\t";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const auto len = rng.below(80);
    for (std::uint64_t i = 0; i < len; ++i) text.push_back(alphabet[rng.below(alphabet.size())]);
    const auto once = tokenize(text);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    CHECK(tokenize(joined) == once);
  }
}

TEST_CASE("split_sentences breaks after terminator runs") {
  CHECK(split_sentences("Great film. Loved it!") == Tokens{"Great film.", "Loved it!"});
  CHECK(split_sentences("Wow...") == Tokens{"Wow..."});
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("  Really?! Yes  ") == Tokens{"Really?!", "Yes"});
  CHECK(split_sentences("...").size() == 1);
}

TEST_CASE("build_vocabulary applies stopwords and min count") {
  std::vector<TokenizedDoc> docs{
      testing::doc("1", Label::High, Tokens(12, "film")),
      testing::doc("2", Label::Low, Tokens(30, "it")),
      testing::doc("3", Label::Low, Tokens(3, "rare")),
  };
  const auto v = build_vocabulary(docs, 10, {"it"});
  CHECK(v.entries == std::map<std::string, std::size_t>{{"film", 12}});
  CHECK(v.stopwords_applied);

  const auto all = build_vocabulary(docs, 1, {});
  CHECK(all.entries == std::map<std::string, std::size_t>{{"film", 12}, {"it", 30}, {"rare", 3}});
  CHECK(!all.stopwords_applied);
  CHECK_THROWS_AS(build_vocabulary(docs, 0, {}), ConfigError);
}

TEST_CASE("vocabulary counts equal a flat recount of random corpora") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TokenizedDoc> docs;
    for (int d = 0; d < 10; ++d) {
      TokenizedDoc doc{std::to_string(d), Label::High, {}};
      for (int t = 0; t < 20; ++t) doc.tokens.push_back("w" + std::string(1, static_cast<char>('a' + rng.below(15))));
      docs.push_back(std::move(doc));
    }
    const auto expected = oracle::recount(docs);
    CHECK(build_vocabulary(docs, 1, {}).entries == expected);

    // Raising min_count only removes terms.
    const auto lo = build_vocabulary(docs, 10, {});
    const auto hi = build_vocabulary(docs, 15, {});
    for (const auto& [term, count] : hi.entries) {
      CHECK(lo.contains(term));
      CHECK(count == expected.at(term));
    }
  }
}

TEST_CASE("the bundled stopword list has 127 entries and matches the shipped file") {
  CHECK(default_stopword_list().size() == 127);
  CHECK(default_stopwords().size() == 127);
  const auto shipped = load_stopwords(std::filesystem::path(RRP_DATA_DIR) / "stopwords_en.txt");
  CHECK(shipped == default_stopwords());
}

TEST_CASE("stopword files allow comments and blank lines") {
  std::istringstream in("# list\nThe\n\nand  # trailing\n");
  CHECK(read_stopwords(in, "f") == StopwordSet{"the", "and"});
  std::istringstream bad("two words\n");
  CHECK_THROWS_AS(read_stopwords(bad, "f"), ParseError);
}

TEST_CASE("remove_stopwords keeps order of the remaining tokens") {
  TokenizedDoc d{"x", Label::High, {"it", "was", "great", "and", "moving"}};
  remove_stopwords(d, default_stopwords());
  CHECK(d.tokens == Tokens{"great", "moving"});
}
