#include "rrp/featsel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rrp/errors.hpp"

namespace rrp {

std::string_view to_string(FeatureMethod method) {
  switch (method) {
    case FeatureMethod::Tfidf: return "tfidf";
    case FeatureMethod::Infogain: return "infogain";
    case FeatureMethod::Sentiment: return "sentiment";
  }
  return "?";
}

FeatureMethod feature_method_from_string(std::string_view text) {
  if (text == "tfidf") return FeatureMethod::Tfidf;
  if (text == "infogain") return FeatureMethod::Infogain;
  if (text == "sentiment") return FeatureMethod::Sentiment;
  throw ConfigError("unknown feature method '" + std::string(text) + "' (expected tfidf, infogain or sentiment)");
}

std::vector<std::string> RankedFeatures::terms() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.term);
  return out;
}

void rank_and_truncate(std::vector<ScoredTerm>& scored, std::size_t k) {
  std::sort(scored.begin(), scored.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  if (scored.size() > k) scored.resize(k);
}

namespace {

struct TermStats {
  std::size_t total = 0;      // occurrences over all docs
  std::size_t df = 0;         // docs containing the term
  std::size_t df_high = 0;    // High docs containing the term
};

std::unordered_map<std::string, TermStats> collect_stats(std::span<const TokenizedDoc> docs) {
  std::unordered_map<std::string, TermStats> stats;
  std::unordered_set<std::string_view> seen;
  for (const auto& doc : docs) {
    seen.clear();
    for (const auto& tok : doc.tokens) {
      auto& s = stats[tok];
      ++s.total;
      if (seen.insert(tok).second) {
        ++s.df;
        if (doc.label == Label::High) ++s.df_high;
      }
    }
  }
  return stats;
}

void require_k(std::size_t k) {
  if (k < 1) throw ConfigError("top-k must be >= 1");
}

}  // namespace

RankedFeatures tfidf_rank(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, std::size_t k) {
  require_k(k);
  if (docs.empty()) throw DataError("tfidf ranking needs at least one document");
  const auto stats = collect_stats(docs);
  const double n = static_cast<double>(docs.size());

  std::vector<ScoredTerm> scored;
  scored.reserve(vocab.size());
  for (const auto& [term, count] : vocab.entries) {
    auto it = stats.find(term);
    double score = 0.0;
    if (it != stats.end() && it->second.df > 0) {
      score = static_cast<double>(it->second.total) * std::log(n / static_cast<double>(it->second.df));
    }
    scored.push_back({term, score});
  }
  rank_and_truncate(scored, k);
  return {FeatureMethod::Tfidf, std::move(scored), k};
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double information_gain(std::size_t high_with, std::size_t low_with, std::size_t high_total,
                        std::size_t low_total) {
  const double n = static_cast<double>(high_total + low_total);
  const double with = static_cast<double>(high_with + low_with);
  const double without = n - with;
  double ig = binary_entropy(static_cast<double>(high_total) / n);
  if (with > 0) ig -= (with / n) * binary_entropy(static_cast<double>(high_with) / with);
  if (without > 0) {
    ig -= (without / n) * binary_entropy(static_cast<double>(high_total - high_with) / without);
  }
  return ig;
}

RankedFeatures infogain_rank(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, std::size_t k) {
  require_k(k);
  std::size_t n_high = 0;
  for (const auto& d : docs) n_high += d.label == Label::High ? 1 : 0;
  const std::size_t n_low = docs.size() - n_high;
  if (n_high == 0 || n_low == 0) {
    throw DataError("information gain needs documents of both classes");
  }

  const auto stats = collect_stats(docs);
  std::vector<ScoredTerm> scored;
  scored.reserve(vocab.size());
  for (const auto& [term, count] : vocab.entries) {
    std::size_t with_high = 0, with_low = 0;
    if (auto it = stats.find(term); it != stats.end()) {
      with_high = it->second.df_high;
      with_low = it->second.df - it->second.df_high;
    }
    scored.push_back({term, information_gain(with_high, with_low, n_high, n_low)});
  }
  rank_and_truncate(scored, k);
  return {FeatureMethod::Infogain, std::move(scored), k};
}

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
    case Polarity::Both: return "both";
  }
  return "?";
}

std::optional<Polarity> polarity_from_string(std::string_view text) {
  if (text == "positive") return Polarity::Positive;
  if (text == "negative") return Polarity::Negative;
  if (text == "neutral") return Polarity::Neutral;
  if (text == "both") return Polarity::Both;
  return std::nullopt;
}

LexiconFormat lexicon_format_from_string(std::string_view text) {
  if (text == "tff") return LexiconFormat::Tff;
  if (text == "tsv") return LexiconFormat::Tsv;
  throw ConfigError("unknown lexicon format '" + std::string(text) + "' (expected tff or tsv)");
}

LexiconFormat lexicon_format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".tsv" ? LexiconFormat::Tsv : LexiconFormat::Tff;
}

namespace {

std::string lowercase(std::string s) {
  for (auto& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::pair<std::string, std::string> parse_tff_line(const std::string& line, const std::string& source,
                                                   std::size_t n) {
  std::istringstream fields(line);
  std::string field, word, polarity;
  while (fields >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    auto key = std::string_view(field).substr(0, eq);
    if (key == "word1") word = field.substr(eq + 1);
    else if (key == "priorpolarity") polarity = field.substr(eq + 1);
  }
  if (word.empty()) throw ParseError(source, n, "missing word1");
  if (polarity.empty()) throw ParseError(source, n, "missing priorpolarity");
  return {word, polarity};
}

std::pair<std::string, std::string> parse_tsv_line(const std::string& line, const std::string& source,
                                                   std::size_t n) {
  auto tab = line.find('\t');
  if (tab == std::string::npos) throw ParseError(source, n, "expected word<TAB>polarity");
  auto word = line.substr(0, tab);
  auto polarity = line.substr(tab + 1);
  while (!polarity.empty() && (polarity.back() == ' ' || polarity.back() == '\t')) polarity.pop_back();
  if (word.empty()) throw ParseError(source, n, "missing word");
  if (polarity.empty()) throw ParseError(source, n, "missing polarity");
  return {word, polarity};
}

}  // namespace

SentimentLexicon read_lexicon(std::istream& in, LexiconFormat format, const std::string& source) {
  SentimentLexicon lex;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    auto [word, pol_text] = format == LexiconFormat::Tff ? parse_tff_line(line, source, n)
                                                         : parse_tsv_line(line, source, n);
    auto polarity = polarity_from_string(pol_text);
    if (!polarity) throw ParseError(source, n, "unknown polarity '" + pol_text + "'");

    word = lowercase(std::move(word));
    auto [it, inserted] = lex.entries.insert_or_assign(word, *polarity);
    if (!inserted) {
      lex.warnings.push_back(source + ":" + std::to_string(n) + ": duplicate word '" + word +
                             "', keeping polarity " + std::string(to_string(*polarity)));
    }
  }
  return lex;
}

SentimentLexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file '" + path.string() + "'");
  return read_lexicon(in, format, path.string());
}

RankedFeatures sentiment_rank(std::span<const TokenizedDoc> docs, const SentimentLexicon& lexicon,
                              std::size_t min_count, std::size_t k) {
  if (min_count < 1) throw ConfigError("sentiment min_count must be >= 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : docs) {
    for (const auto& tok : doc.tokens) {
      auto it = lexicon.entries.find(tok);
      if (it != lexicon.entries.end() && it->second != Polarity::Neutral) ++counts[tok];
    }
  }
  std::vector<ScoredTerm> scored;
  for (const auto& [term, count] : counts) {
    if (count >= min_count) scored.push_back({term, static_cast<double>(count)});
  }
  const std::size_t keep = k == 0 ? scored.size() : k;
  rank_and_truncate(scored, keep);
  return {FeatureMethod::Sentiment, std::move(scored), keep};
}

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::Binary: return "binary";
    case Weighting::Count: return "count";
    case Weighting::Tfidf: return "tfidf";
  }
  return "?";
}

Weighting weighting_from_string(std::string_view text) {
  if (text == "binary") return Weighting::Binary;
  if (text == "count") return Weighting::Count;
  if (text == "tfidf") return Weighting::Tfidf;
  throw ConfigError("unknown weighting '" + std::string(text) + "' (expected binary, count or tfidf)");
}

Weighting default_weighting(FeatureMethod method) {
  return method == FeatureMethod::Tfidf ? Weighting::Tfidf : Weighting::Binary;
}

IdfTable compute_idf(std::span<const TokenizedDoc> docs, std::span<const std::string> terms) {
  const auto stats = collect_stats(docs);
  const double n = static_cast<double>(docs.size());
  IdfTable idf;
  for (const auto& t : terms) {
    auto it = stats.find(t);
    idf[t] = (it == stats.end() || it->second.df == 0) ? 0.0
                                                        : std::log(n / static_cast<double>(it->second.df));
  }
  return idf;
}

FeatureSpace::FeatureSpace(std::vector<std::string> terms, Weighting weighting,
                           std::optional<std::vector<double>> idf)
    : terms_(std::move(terms)), weighting_(weighting), idf_(std::move(idf)) {
  if (weighting_ == Weighting::Tfidf && !idf_) {
    throw ConfigError("tfidf weighting requires an idf table computed on the training corpus");
  }
  if (idf_ && idf_->size() != terms_.size()) {
    throw InvariantError("idf table size does not match the feature list");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<Eigen::Index>(i)).second) {
      throw InvariantError("duplicate feature term '" + terms_[i] + "'");
    }
  }
}

FeatureSpace FeatureSpace::from_ranked(const RankedFeatures& ranked, Weighting weighting,
                                       const IdfTable* idf) {
  auto terms = ranked.terms();
  std::optional<std::vector<double>> values;
  if (weighting == Weighting::Tfidf) {
    if (idf == nullptr) {
      throw ConfigError("tfidf weighting requires an idf table computed on the training corpus");
    }
    values.emplace();
    for (const auto& t : terms) {
      auto it = idf->find(t);
      values->push_back(it == idf->end() ? 0.0 : it->second);
    }
  }
  return FeatureSpace(std::move(terms), weighting, std::move(values));
}

std::optional<Eigen::Index> FeatureSpace::index_of(const std::string& term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureVector vectorize(const TokenizedDoc& doc, const FeatureSpace& space) {
  std::map<Eigen::Index, double> counts;
  for (const auto& tok : doc.tokens) {
    if (auto idx = space.index_of(tok)) counts[*idx] += 1.0;
  }
  FeatureVector fv;
  fv.label = doc.label;
  fv.values.resize(space.dimension());
  fv.values.reserve(static_cast<Eigen::Index>(counts.size()));
  for (const auto& [idx, tf] : counts) {
    double v = tf;
    switch (space.weighting()) {
      case Weighting::Binary: v = 1.0; break;
      case Weighting::Count: break;
      case Weighting::Tfidf: v = tf * (*space.idf())[static_cast<std::size_t>(idx)]; break;
    }
    if (v != 0.0) fv.values.insertBack(idx) = v;
  }
  return fv;
}

FeatureVector vectorize(const TokenizedDoc& doc, const RankedFeatures& features, Weighting weighting,
                        const IdfTable* idf) {
  return vectorize(doc, FeatureSpace::from_ranked(features, weighting, idf));
}

std::vector<FeatureVector> vectorize_all(std::span<const TokenizedDoc> docs, const FeatureSpace& space) {
  std::vector<FeatureVector> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(vectorize(d, space));
  return out;
}

}  // namespace rrp
