#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "rrp/corpus.hpp"
#include "rrp/errors.hpp"
#include "rrp/random.hpp"

using namespace rrp;

namespace {

struct MovieRow {
  const char* name;
  std::array<std::size_t, 5> by_stars;  // 1..5
};

// Star histograms of the eight films in the reference corpus.
const std::vector<MovieRow> kTable1 = {
    {"Food Inc.", {48, 30, 78, 357, 1949}},      {"Boyhood", {425, 296, 318, 342, 872}},
    {"Fed Up", {36, 29, 82, 185, 1069}},         {"Blackfish", {31, 15, 42, 117, 750}},
    {"The Imitation Game", {26, 14, 54, 158, 577}}, {"Super-Size Me", {82, 41, 71, 152, 324}},
    {"Inside Job", {44, 10, 21, 54, 308}},       {"Citizenfour", {3, 1, 10, 17, 168}},
};

Corpus fixture_corpus(const std::vector<MovieRow>& rows) {
  Corpus c;
  std::size_t id = 0;
  for (const auto& row : rows) {
    for (int s = 1; s <= 5; ++s) {
      for (std::size_t k = 0; k < row.by_stars[static_cast<std::size_t>(s - 1)]; ++k) {
        c.reviews.push_back({"r" + std::to_string(++id), row.name, s, "review text, with \"quotes\"\nand a newline"});
      }
    }
  }
  return c;
}

std::string to_jsonl(const Corpus& c) {
  std::ostringstream out;
  write_reviews_jsonl(out, c);
  return out.str();
}

LabeledCorpus labeled_of(std::size_t high, std::size_t low) {
  LabeledCorpus lc;
  for (std::size_t i = 0; i < high; ++i) lc.items.push_back({{"h" + std::to_string(i), "m", 5, ""}, Label::High});
  for (std::size_t i = 0; i < low; ++i) lc.items.push_back({{"l" + std::to_string(i), "m", 2, ""}, Label::Low});
  return lc;
}

std::vector<std::string> ids(const LabeledCorpus& c) {
  std::vector<std::string> out;
  for (const auto& it : c.items) out.push_back(it.review.review_id);
  return out;
}

}  // namespace

TEST_CASE("load_reviews reproduces the per-movie star table from a transcribed fixture") {
  testing::TempDir dir;
  const auto path = dir.write("table1.jsonl", to_jsonl(fixture_corpus(kTable1)));
  const Corpus corpus = load_reviews(path, ReviewFormat::Jsonl);
  const auto summary = summarize(corpus);
  REQUIRE(summary.size() == 8);
  CHECK(summary[0].movie == "Food Inc.");
  CHECK(summary[0].total() == 2462);
  CHECK(summary[0].stars(5) == 1949);
  CHECK(summary[0].stars(4) == 357);
  CHECK(summary[1].total() == 2253);
  CHECK(summary[7].total() == 199);

  std::ostringstream tsv;
  write_summary_tsv(tsv, summary);
  CHECK(tsv.str().find("Food Inc.\t2462\t1949\t357\t78\t30\t48\n") != std::string::npos);
}

TEST_CASE("label_binary drops 4-star reviews") {
  const Corpus food = fixture_corpus({kTable1[0]});
  const auto labeled = label_binary(food);
  CHECK(labeled.items.size() == 2462 - 357);
  CHECK(labeled.count(Label::High) == 1949);
  CHECK(labeled.count(Label::Low) == 78 + 30 + 48);

  Corpus only_four;
  only_four.reviews = {{"a", "m", 4, ""}, {"b", "m", 4, ""}};
  CHECK(label_binary(only_four).items.empty());

  Corpus pair;
  pair.reviews = {{"a", "m", 5, ""}, {"b", "m", 2, ""}};
  const auto lp = label_binary(pair);
  REQUIRE(lp.items.size() == 2);
  CHECK(lp.items[0].label == Label::High);
  CHECK(lp.items[1].label == Label::Low);
}

TEST_CASE("label_binary size identity holds on random corpora") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus c;
    std::size_t fours = 0;
    const auto n = rng.below(40);
    for (std::uint64_t i = 0; i < n; ++i) {
      const int s = 1 + static_cast<int>(rng.below(5));
      fours += s == 4 ? 1 : 0;
      c.reviews.push_back({std::to_string(i), "m", s, ""});
    }
    const auto lc = label_binary(c);
    CHECK(lc.items.size() == c.reviews.size() - fours);
    for (const auto& it : lc.items) CHECK((it.label == Label::High) == (it.review.stars == 5));
  }
}

TEST_CASE("empty review file gives an empty corpus") {
  std::istringstream empty("");
  const auto c = read_reviews(empty, ReviewFormat::Jsonl, "empty");
  CHECK(c.reviews.empty());
  CHECK(summarize(c).empty());
  std::istringstream empty_csv("");
  CHECK(read_reviews(empty_csv, ReviewFormat::Csv, "empty").reviews.empty());
}

TEST_CASE("malformed records name the line and the field") {
  std::istringstream bad_stars(
      "{\"review_id\":\"a\",\"movie\":\"m\",\"stars\":5,\"text\":\"ok\"}\n"
      "{\"review_id\":\"b\",\"movie\":\"m\",\"stars\":6,\"text\":\"no\"}\n");
  try {
    read_reviews(bad_stars, ReviewFormat::Jsonl, "f.jsonl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("stars") != std::string::npos);
  }

  std::istringstream missing("{\"review_id\":\"a\",\"stars\":5,\"text\":\"ok\"}\n");
  CHECK_THROWS_WITH_AS(read_reviews(missing, ReviewFormat::Jsonl, "f"), doctest::Contains("movie"), ParseError);

  std::istringstream not_int("{\"review_id\":\"a\",\"movie\":\"m\",\"stars\":\"5\",\"text\":\"\"}\n");
  CHECK_THROWS_AS(read_reviews(not_int, ReviewFormat::Jsonl, "f"), ParseError);

  std::istringstream garbage("{not json\n");
  CHECK_THROWS_AS(read_reviews(garbage, ReviewFormat::Jsonl, "f"), ParseError);
}

TEST_CASE("duplicate review ids are rejected, duplicate texts are kept") {
  std::istringstream dup(
      "{\"review_id\":\"a\",\"movie\":\"m\",\"stars\":5,\"text\":\"same\"}\n"
      "{\"review_id\":\"a\",\"movie\":\"m\",\"stars\":1,\"text\":\"other\"}\n");
  CHECK_THROWS_WITH_AS(read_reviews(dup, ReviewFormat::Jsonl, "f"), doctest::Contains("duplicate"), DataError);

  std::istringstream same_text(
      "{\"review_id\":\"a\",\"movie\":\"m\",\"stars\":5,\"text\":\"same\"}\n"
      "{\"review_id\":\"b\",\"movie\":\"m\",\"stars\":5,\"text\":\"same\"}\n");
  CHECK(read_reviews(same_text, ReviewFormat::Jsonl, "f").reviews.size() == 2);
}

TEST_CASE("CSV follows RFC-4180 quoting") {
  std::istringstream csv(
      "review_id,movie,stars,text\r\n"
      "a,Food Inc.,5,\"Great, \"\"eye-opening\"\"\nfilm\"\r\n"
      "b,Boyhood,2,plain\n");
  const auto c = read_reviews(csv, ReviewFormat::Csv, "f.csv");
  REQUIRE(c.reviews.size() == 2);
  CHECK(c.reviews[0].text == "Great, \"eye-opening\"\nfilm");
  CHECK(c.reviews[0].movie == "Food Inc.");
  CHECK(c.reviews[1].stars == 2);

  std::istringstream bad("review_id,movie,stars,text\na,m,7,x\n");
  CHECK_THROWS_WITH_AS(read_reviews(bad, ReviewFormat::Csv, "f"), doctest::Contains("stars"), ParseError);

  std::istringstream header("id,movie,stars,text\n");
  CHECK_THROWS_AS(read_reviews(header, ReviewFormat::Csv, "f"), ParseError);
}

TEST_CASE("reloading a file yields the identical sequence") {
  testing::TempDir dir;
  const auto path = dir.write("c.jsonl", to_jsonl(fixture_corpus({kTable1[7]})));
  const auto a = load_reviews(path, ReviewFormat::Jsonl);
  const auto b = load_reviews(path, ReviewFormat::Jsonl);
  REQUIRE(a.reviews.size() == b.reviews.size());
  for (std::size_t i = 0; i < a.reviews.size(); ++i) {
    CHECK(a.reviews[i].review_id == b.reviews[i].review_id);
    CHECK(a.reviews[i].text == b.reviews[i].text);
  }
}

TEST_CASE("split is stratified by class") {
  const auto s = split(labeled_of(8, 2), 0.9, 3);
  CHECK(s.train.count(Label::High) == 7);
  CHECK(s.train.count(Label::Low) == 1);
  CHECK(s.test.count(Label::High) == 1);
  CHECK(s.test.count(Label::Low) == 1);

  const auto half = split(labeled_of(2, 2), 0.5, 9);
  CHECK(half.train.count(Label::High) == 1);
  CHECK(half.train.count(Label::Low) == 1);
  CHECK(half.test.items.size() == 2);
}

TEST_CASE("split is deterministic per seed") {
  const auto corpus = labeled_of(30, 12);
  const auto a = split(corpus, 0.9, 42);
  const auto b = split(corpus, 0.9, 42);
  CHECK(ids(a.train) == ids(b.train));
  CHECK(ids(a.test) == ids(b.test));
  CHECK(membership_digest(a) == membership_digest(b));

  bool any_differs = false;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) any_differs = any_differs || ids(split(corpus, 0.9, seed).test) != ids(a.test);
  CHECK(any_differs);
}

TEST_CASE("split is a partition with the floor rule on random corpora") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t high = 2 + rng.below(50), low = 2 + rng.below(20);
    const double fraction = 0.05 + 0.9 * rng.uniform();
    const auto s = split(labeled_of(high, low), fraction, rng.next());
    CHECK(s.train.count(Label::High) == static_cast<std::size_t>(std::floor(fraction * high + 1e-9)));
    CHECK(s.train.count(Label::Low) == static_cast<std::size_t>(std::floor(fraction * low + 1e-9)));

    std::multiset<std::string> all;
    for (const auto& id : ids(s.train)) all.insert(id);
    for (const auto& id : ids(s.test)) all.insert(id);
    CHECK(all.size() == high + low);
    CHECK(std::set<std::string>(all.begin(), all.end()).size() == high + low);
  }
}

TEST_CASE("split rejects classes too small to stratify and bad fractions") {
  CHECK_THROWS_AS(split(labeled_of(5, 1), 0.9, 1), DataError);
  CHECK_THROWS_AS(split(labeled_of(5, 0), 0.9, 1), DataError);
  CHECK_THROWS_AS(split(labeled_of(5, 5), 1.0, 1), ConfigError);
  CHECK_THROWS_AS(split(labeled_of(5, 5), 0.0, 1), ConfigError);
}
