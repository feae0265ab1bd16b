#include "rrp/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "rrp/errors.hpp"

namespace rrp {

namespace {

bool is_terminator(char c) { return c == '.' || c == '?' || c == '!'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (char raw : text) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_terminator(text[i])) {
      while (i < text.size() && is_terminator(text[i])) ++i;
      auto sentence = trim(text.substr(start, i - start));
      if (!sentence.empty()) out.push_back(std::move(sentence));
      start = i;
    } else {
      ++i;
    }
  }
  auto tail = trim(text.substr(start));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs, std::size_t min_count,
                            const StopwordSet& stopwords) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  Vocabulary vocab;
  vocab.min_count = min_count;
  vocab.stopwords_applied = !stopwords.empty();
  for (const auto& doc : docs) {
    for (const auto& tok : doc.tokens) ++vocab.entries[tok];
  }
  std::erase_if(vocab.entries, [&](const auto& kv) {
    return kv.second < min_count || stopwords.count(kv.first) != 0;
  });
  return vocab;
}

const std::vector<std::string_view>& default_stopword_list() {
  static const std::vector<std::string_view> words{
      "i",          "me",       "my",      "myself",  "we",         "our",     "ours",
      "ourselves",  "you",      "your",    "yours",   "yourself",   "yourselves",
      "he",         "him",      "his",     "himself", "she",        "her",     "hers",
      "herself",    "it",       "its",     "itself",  "they",       "them",    "their",
      "theirs",     "themselves", "what",  "which",   "who",        "whom",    "this",
      "that",       "these",    "those",   "am",      "is",         "are",     "was",
      "were",       "be",       "been",    "being",   "have",       "has",     "had",
      "having",     "do",       "does",    "did",     "doing",      "a",       "an",
      "the",        "and",      "but",     "if",      "or",         "because", "as",
      "until",      "while",    "of",      "at",      "by",         "for",     "with",
      "about",      "against",  "between", "into",   "through",    "during",  "before",
      "after",      "above",    "below",   "to",      "from",       "up",      "down",
      "in",         "out",      "on",      "off",     "over",       "under",   "again",
      "further",    "then",     "once",    "here",    "there",      "when",    "where",
      "why",        "how",      "all",     "any",     "both",       "each",    "few",
      "more",       "most",     "other",   "some",    "such",       "no",      "nor",
      "not",        "only",     "own",     "same",    "so",         "than",    "too",
      "very",       "s",        "t",       "can",     "will",       "just",    "don",
      "should",     "now"};
  return words;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (auto w : default_stopword_list()) s.emplace(w);
    return s;
  }();
  return set;
}

StopwordSet read_stopwords(std::istream& in, const std::string& source) {
  StopwordSet out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto word = trim(line);
    if (word.empty()) continue;
    if (word.find_first_of(" \t") != std::string::npos) {
      throw ParseError(source, n, "expected one word per line");
    }
    std::transform(word.begin(), word.end(), word.begin(),
                   [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; });
    out.insert(std::move(word));
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file '" + path.string() + "'");
  return read_stopwords(in, path.string());
}

TokenizedDoc tokenize_review(const LabeledReview& item) {
  return {item.review.review_id, item.label, tokenize(item.review.text)};
}

std::vector<TokenizedDoc> tokenize_corpus(const LabeledCorpus& corpus) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.items.size());
  for (const auto& item : corpus.items) docs.push_back(tokenize_review(item));
  return docs;
}

void remove_stopwords(TokenizedDoc& doc, const StopwordSet& stopwords) {
  if (stopwords.empty()) return;
  std::erase_if(doc.tokens, [&](const std::string& t) { return stopwords.count(t) != 0; });
}

}  // namespace rrp
