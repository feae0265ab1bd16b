#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rrp/errors.hpp"
#include "rrp/featsel.hpp"

using namespace rrp;
using oracle::random_corpus;
using testing::doc;
using Tokens = std::vector<std::string>;

namespace {

Vocabulary vocab_of(const std::vector<TokenizedDoc>& docs) { return build_vocabulary(docs, 1, {}); }

double score_of(const RankedFeatures& r, const std::string& term) {
  for (const auto& e : r.entries) {
    if (e.term == term) return e.score;
  }
  FAIL("term not ranked: " << term);
  return 0.0;
}

}  // namespace

TEST_CASE("tfidf: term in every document scores zero") {
  std::vector<TokenizedDoc> docs{doc("1", Label::High, {"film", "good"}), doc("2", Label::Low, {"film", "bad"}),
                                 doc("3", Label::High, {"film"})};
  const auto r = tfidf_rank(docs, vocab_of(docs), 10);
  CHECK(score_of(r, "film") == 0.0);
  CHECK(r.entries.back().term == "film");
}

TEST_CASE("tfidf: twice in one of four documents scores 2 ln 4") {
  std::vector<TokenizedDoc> docs{doc("1", Label::High, {"x", "x"}), doc("2", Label::Low, {"y"}),
                                 doc("3", Label::High, {"y"}), doc("4", Label::Low, {"y"})};
  const auto r = tfidf_rank(docs, vocab_of(docs), 10);
  CHECK(score_of(r, "x") == doctest::Approx(2.772589).epsilon(1e-6));
  CHECK(score_of(r, "x") == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("equal scores are ordered lexicographically") {
  std::vector<TokenizedDoc> docs{doc("1", Label::High, {"zeta", "alpha"}), doc("2", Label::Low, {"mid"})};
  const auto r = tfidf_rank(docs, vocab_of(docs), 10);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].term == "alpha");
  CHECK(r.entries[1].term == "mid");
  CHECK(r.entries[2].term == "zeta");
}

TEST_CASE("tfidf score grows with total count at fixed df") {
  auto corpus = [](int count) {
    std::vector<TokenizedDoc> docs{doc("1", Label::High, Tokens(static_cast<std::size_t>(count), "x")),
                                   doc("2", Label::Low, {"y"}), doc("3", Label::Low, {"y"})};
    return docs;
  };
  double previous = -1.0;
  for (int c = 1; c < 8; ++c) {
    const auto docs = corpus(c);
    const double s = score_of(tfidf_rank(docs, vocab_of(docs), 5), "x");
    CHECK(s > previous);
    CHECK(s >= 0.0);
    previous = s;
  }
}

TEST_CASE("information gain fixtures") {
  std::vector<TokenizedDoc> separator{doc("1", Label::High, {"t"}), doc("2", Label::High, {"t"}),
                                      doc("3", Label::Low, {"u"}), doc("4", Label::Low, {"u"})};
  CHECK(score_of(infogain_rank(separator, vocab_of(separator), 5), "t") == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<TokenizedDoc> independent{doc("1", Label::High, {"t"}), doc("2", Label::High, {"u"}),
                                        doc("3", Label::Low, {"t"}), doc("4", Label::Low, {"u"})};
  CHECK(std::abs(score_of(infogain_rank(independent, vocab_of(independent), 5), "t")) < 1e-15);

  std::vector<TokenizedDoc> partial{doc("1", Label::High, {"t"}), doc("2", Label::High, {"t"}),
                                    doc("3", Label::Low, {"t"}), doc("4", Label::Low, {"u"})};
  const double ig = score_of(infogain_rank(partial, vocab_of(partial), 5), "t");
  CHECK(ig == doctest::Approx(0.311278).epsilon(1e-6));
  CHECK(std::abs(ig - oracle::infogain_mutual_information(partial, "t")) < 1e-12);
}

TEST_CASE("information gain rejects single-class input and bad k") {
  std::vector<TokenizedDoc> docs{doc("1", Label::High, {"t"}), doc("2", Label::High, {"u"})};
  CHECK_THROWS_AS(infogain_rank(docs, vocab_of(docs), 5), DataError);
  CHECK_THROWS_AS(tfidf_rank(docs, vocab_of(docs), 0), ConfigError);
}

TEST_CASE("information gain properties on random corpora") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto docs = random_corpus(rng, 8, 10);
    const auto vocab = vocab_of(docs);
    if (vocab.size() == 0) continue;
    const auto r = infogain_rank(docs, vocab, vocab.size());

    std::size_t high = 0;
    for (const auto& d : docs) high += d.label == Label::High ? 1 : 0;
    const double hc = binary_entropy(static_cast<double>(high) / static_cast<double>(docs.size()));

    auto swapped = docs;
    for (auto& d : swapped) d.label = d.label == Label::High ? Label::Low : Label::High;
    const auto rs = infogain_rank(swapped, vocab, vocab.size());

    for (const auto& e : r.entries) {
      CHECK(e.score >= -1e-15);
      CHECK(e.score <= hc + 1e-12);
      CHECK(std::abs(e.score - oracle::infogain_mutual_information(docs, e.term)) < 1e-12);
      CHECK(std::abs(e.score - score_of(rs, e.term)) < 1e-12);
    }
  }
}

TEST_CASE("ranking is deterministic and top-k lists are prefixes") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto docs = random_corpus(rng, 8, 10);
    const auto vocab = vocab_of(docs);
    if (vocab.size() < 2) continue;
    for (auto rank : {&tfidf_rank, &infogain_rank}) {
      const auto full = rank(docs, vocab, vocab.size());
      CHECK(full.entries == rank(docs, vocab, vocab.size()).entries);
      const auto k = 1 + rng.below(vocab.size());
      const auto head = rank(docs, vocab, k);
      CHECK(head.entries.size() == std::min<std::size_t>(k, vocab.size()));
      for (std::size_t i = 0; i < head.entries.size(); ++i) CHECK(head.entries[i] == full.entries[i]);
      for (std::size_t i = 1; i < full.entries.size(); ++i) {
        const auto& a = full.entries[i - 1];
        const auto& b = full.entries[i];
        CHECK((a.score > b.score || (a.score == b.score && a.term < b.term)));
      }
    }
  }
}

TEST_CASE("lexicon parsing in both formats") {
  std::istringstream tff(
      "type=strongsubj len=1 word1=amazing pos1=adj stemmed1=n priorpolarity=positive\n"
      "# comment\n\n"
      "type=weaksubj len=1 word1=Fine pos1=adj stemmed1=n priorpolarity=neutral\n");
  const auto lex = read_lexicon(tff, LexiconFormat::Tff, "l.tff");
  CHECK(lex.entries.at("amazing") == Polarity::Positive);
  CHECK(lex.entries.at("fine") == Polarity::Neutral);

  std::istringstream tsv("cruel\tnegative\nhard\tboth\n");
  const auto lt = read_lexicon(tsv, LexiconFormat::Tsv, "l.tsv");
  CHECK(lt.entries.at("cruel") == Polarity::Negative);
  CHECK(lt.entries.at("hard") == Polarity::Both);
}

TEST_CASE("lexicon errors name the line") {
  std::istringstream missing("word1=ok priorpolarity=positive\nword1=foo\n");
  try {
    read_lexicon(missing, LexiconFormat::Tff, "l");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("priorpolarity") != std::string::npos);
  }
  std::istringstream unknown("word1=foo priorpolarity=weakpos\n");
  CHECK_THROWS_AS(read_lexicon(unknown, LexiconFormat::Tff, "l"), ParseError);
  std::istringstream no_tab("cruel negative\n");
  CHECK_THROWS_AS(read_lexicon(no_tab, LexiconFormat::Tsv, "l"), ParseError);
}

TEST_CASE("duplicate lexicon words: last wins with a warning") {
  std::istringstream tsv("hard\tnegative\nhard\tpositive\n");
  const auto lex = read_lexicon(tsv, LexiconFormat::Tsv, "l");
  CHECK(lex.entries.at("hard") == Polarity::Positive);
  CHECK(lex.warnings.size() == 1);
}

TEST_CASE("sentiment_rank thresholds by corpus count") {
  SentimentLexicon lex;
  lex.entries = {{"good", Polarity::Positive}, {"bad", Polarity::Negative}};
  std::vector<TokenizedDoc> docs{doc("1", Label::High, Tokens(7, "good")), doc("2", Label::Low, Tokens(4, "bad"))};
  const auto r = sentiment_rank(docs, lex, 5);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].term == "good");
  CHECK(r.entries[0].score == 7.0);

  CHECK(sentiment_rank(docs, SentimentLexicon{}, 5).entries.empty());
}

TEST_CASE("sentiment_rank equals a set-intersection oracle") {
  Rng rng(77);
  const std::vector<Polarity> pols{Polarity::Positive, Polarity::Negative, Polarity::Neutral, Polarity::Both};
  for (int trial = 0; trial < 100; ++trial) {
    auto docs = random_corpus(rng, 8, 10);
    SentimentLexicon lex;
    for (char c = 'a'; c < 'a' + 10; ++c) {
      if (rng.below(2)) lex.entries["t" + std::string(1, c)] = pols[rng.below(4)];
    }
    const std::size_t min_count = 1 + rng.below(3);

    std::set<std::pair<std::string, std::size_t>> expected;
    for (const auto& [term, count] : oracle::recount(docs)) {
      auto it = lex.entries.find(term);
      if (it != lex.entries.end() && it->second != Polarity::Neutral && count >= min_count) expected.emplace(term, count);
    }
    std::set<std::pair<std::string, std::size_t>> got;
    for (const auto& e : sentiment_rank(docs, lex, min_count).entries) got.emplace(e.term, static_cast<std::size_t>(e.score));
    CHECK(got == expected);
  }
}

TEST_CASE("vectorize under each weighting") {
  RankedFeatures features{FeatureMethod::Infogain, {{"great", 1.0}, {"boring", 0.5}}, 2};
  const auto d = doc("1", Label::High, {"great", "great", "film"});

  const auto counts = vectorize(d, features, Weighting::Count);
  CHECK(counts.values.size() == 2);
  CHECK(counts.values.nonZeros() == 1);
  CHECK(counts.values.coeff(0) == 2.0);

  const auto binary = vectorize(d, features, Weighting::Binary);
  CHECK(binary.values.coeff(0) == 1.0);
  CHECK(binary.values.nonZeros() == 1);

  const auto none = vectorize(doc("2", Label::Low, {"film", "plot"}), features, Weighting::Binary);
  CHECK(none.values.nonZeros() == 0);
  CHECK(none.values.size() == 2);

  CHECK_THROWS_AS(vectorize(d, features, Weighting::Tfidf), ConfigError);
  IdfTable idf{{"great", 0.5}, {"boring", 2.0}};
  const auto weighted = vectorize(d, features, Weighting::Tfidf, &idf);
  CHECK(weighted.values.coeff(0) == 1.0);
}

TEST_CASE("binary vectors stay in {0,1} and within the feature dimension") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto docs = random_corpus(rng, 8, 10);
    const auto vocab = vocab_of(docs);
    if (vocab.size() == 0) continue;
    const auto r = tfidf_rank(docs, vocab, 1 + rng.below(vocab.size()));
    const auto idf = compute_idf(docs, r.terms());
    for (auto w : {Weighting::Binary, Weighting::Count, Weighting::Tfidf}) {
      const auto space = FeatureSpace::from_ranked(r, w, &idf);
      for (const auto& d : docs) {
        const auto v = vectorize(d, space);
        CHECK(v.values.size() == static_cast<Eigen::Index>(r.size()));
        for (Eigen::SparseVector<double>::InnerIterator it(v.values); it; ++it) {
          CHECK(std::isfinite(it.value()));
          if (w == Weighting::Binary) CHECK(it.value() == 1.0);
        }
      }
    }
  }
}
