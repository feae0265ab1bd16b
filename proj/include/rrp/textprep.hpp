#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rrp/corpus.hpp"

namespace rrp {

using StopwordSet = std::unordered_set<std::string>;

struct TokenizedDoc {
  std::string review_id;
  Label label = Label::High;
  std::vector<std::string> tokens;
};

/// Term counts over a document collection after stopword removal and the
/// min-count filter. std::map gives lexicographic iteration.
struct Vocabulary {
  std::map<std::string, std::size_t> entries;
  std::size_t min_count = 1;
  bool stopwords_applied = false;

  bool contains(const std::string& term) const { return entries.count(term) != 0; }
  std::size_t size() const { return entries.size(); }
};

/// Lowercase, split on anything outside [a-z], drop tokens shorter than 2.
std::vector<std::string> tokenize(std::string_view text);

/// Split after runs of '.', '?' or '!'; trims whitespace, drops empties.
std::vector<std::string> split_sentences(std::string_view text);

/// Counts every token of every doc, drops stopwords, then drops terms seen
/// fewer than min_count times.
Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs, std::size_t min_count,
                            const StopwordSet& stopwords);

/// The bundled 127-word English function-word list.
const StopwordSet& default_stopwords();
const std::vector<std::string_view>& default_stopword_list();

/// One word per line; blank lines and '#' comments ignored.
StopwordSet read_stopwords(std::istream& in, const std::string& source);
StopwordSet load_stopwords(const std::filesystem::path& path);

TokenizedDoc tokenize_review(const LabeledReview& item);
std::vector<TokenizedDoc> tokenize_corpus(const LabeledCorpus& corpus);

void remove_stopwords(TokenizedDoc& doc, const StopwordSet& stopwords);

}  // namespace rrp
