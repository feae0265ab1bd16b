#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rrp/textprep.hpp"

namespace rrp {

enum class FeatureMethod { Tfidf, Infogain, Sentiment };

std::string_view to_string(FeatureMethod method);
FeatureMethod feature_method_from_string(std::string_view text);

struct ScoredTerm {
  std::string term;
  double score = 0.0;

  bool operator==(const ScoredTerm&) const = default;
};

/// Score-descending, ties broken by ascending term.
struct RankedFeatures {
  FeatureMethod method = FeatureMethod::Infogain;
  std::vector<ScoredTerm> entries;
  std::size_t k = 0;

  std::vector<std::string> terms() const;
  std::size_t size() const { return entries.size(); }
};

/// Sorts by the RankedFeatures order and keeps the first k.
void rank_and_truncate(std::vector<ScoredTerm>& scored, std::size_t k);

/// score(t) = sum over docs of tf(t, d) * ln(N / df(t)).
RankedFeatures tfidf_rank(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, std::size_t k);

/// Entropy of a Bernoulli(p) variable in bits, 0 log 0 = 0.
double binary_entropy(double p);

/// Information gain of a term's document-level presence about the label, in bits.
double information_gain(std::size_t high_with, std::size_t low_with, std::size_t high_total,
                        std::size_t low_total);

RankedFeatures infogain_rank(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, std::size_t k);

enum class Polarity { Positive, Negative, Neutral, Both };

std::string_view to_string(Polarity p);
std::optional<Polarity> polarity_from_string(std::string_view text);

struct SentimentLexicon {
  std::map<std::string, Polarity> entries;
  /// Duplicate-word notices collected while loading (later entry wins).
  std::vector<std::string> warnings;
};

enum class LexiconFormat { Tff, Tsv };

LexiconFormat lexicon_format_from_string(std::string_view text);
/// .tsv is TSV, everything else is the key=value format.
LexiconFormat lexicon_format_for_path(const std::filesystem::path& path);

SentimentLexicon read_lexicon(std::istream& in, LexiconFormat format, const std::string& source);
SentimentLexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format);

/// Corpus tokens in the lexicon with a non-neutral polarity and corpus count
/// >= min_count, scored by corpus count. k = 0 keeps all of them.
RankedFeatures sentiment_rank(std::span<const TokenizedDoc> docs, const SentimentLexicon& lexicon,
                              std::size_t min_count, std::size_t k = 0);

enum class Weighting { Binary, Count, Tfidf };

std::string_view to_string(Weighting w);
Weighting weighting_from_string(std::string_view text);
Weighting default_weighting(FeatureMethod method);

/// term -> ln(N / df), computed over a document collection.
using IdfTable = std::map<std::string, double>;

/// idf for each listed term; terms absent from every doc get idf 0.
IdfTable compute_idf(std::span<const TokenizedDoc> docs, std::span<const std::string> terms);

/// Ordered feature terms plus everything needed to turn a document into a
/// vector over them.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<std::string> terms, Weighting weighting,
               std::optional<std::vector<double>> idf = std::nullopt);

  static FeatureSpace from_ranked(const RankedFeatures& ranked, Weighting weighting,
                                  const IdfTable* idf);

  const std::vector<std::string>& terms() const { return terms_; }
  Weighting weighting() const { return weighting_; }
  const std::optional<std::vector<double>>& idf() const { return idf_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(terms_.size()); }
  std::optional<Eigen::Index> index_of(const std::string& term) const;

 private:
  std::vector<std::string> terms_;
  Weighting weighting_ = Weighting::Binary;
  std::optional<std::vector<double>> idf_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

struct FeatureVector {
  Eigen::SparseVector<double> values;
  std::optional<Label> label;
};

FeatureVector vectorize(const TokenizedDoc& doc, const FeatureSpace& space);
FeatureVector vectorize(const TokenizedDoc& doc, const RankedFeatures& features, Weighting weighting,
                        const IdfTable* idf = nullptr);
std::vector<FeatureVector> vectorize_all(std::span<const TokenizedDoc> docs, const FeatureSpace& space);

}  // namespace rrp
