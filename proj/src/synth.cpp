#include "rrp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rrp/errors.hpp"
#include "rrp/random.hpp"

namespace rrp {

void validate(const SynthSpec& spec) {
  if (spec.high == 0 || spec.low == 0) throw ConfigError("synthetic corpus needs positive High and Low counts");
  if (spec.planted_terms < 2 || spec.planted_terms % 2 != 0) {
    throw ConfigError("planted_terms must be a positive even number");
  }
  if (spec.background_terms == 0) throw ConfigError("background_terms must be positive");
  if (spec.rare_per_doc > 0 && spec.rare_terms == 0) throw ConfigError("rare_terms must be positive");
  if (spec.movies == 0) throw ConfigError("movies must be positive");
  if (!(spec.signal >= 0.0 && spec.signal <= 1.0)) throw ConfigError("signal must lie in [0, 1]");
  if (!(spec.zipf_exponent >= 0.0)) throw ConfigError("zipf_exponent must be >= 0");
}

namespace {

// Fixed-width base-26 code: 0 -> "aaa", 1 -> "aab", ...
std::string word(const char* prefix, std::size_t index) {
  std::string code(3, 'a');
  for (int pos = 2; pos >= 0; --pos) {
    code[static_cast<std::size_t>(pos)] = static_cast<char>('a' + index % 26);
    index /= 26;
  }
  return prefix + code;
}

std::vector<std::string> word_list(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(word(prefix, i));
  return out;
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      acc += std::pow(static_cast<double>(r + 1), -exponent);
      cdf_[r] = acc;
    }
    for (auto& c : cdf_) c /= acc;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string render_text(std::vector<std::string>& tokens, Rng& rng) {
  rng.shuffle(std::span(tokens));
  std::string text;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t len = 6 + static_cast<std::size_t>(rng.below(9));
    const std::size_t end = std::min(tokens.size(), i + len);
    if (!text.empty()) text.push_back(' ');
    for (std::size_t j = i; j < end; ++j) {
      std::string w = tokens[j];
      if (j == i) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      text += w;
      if (j + 1 < end) text.push_back(' ');
    }
    text.push_back(rng.below(4) == 0 ? '!' : '.');
    i = end;
  }
  return text;
}

}  // namespace

SynthVocabulary synthetic_vocabulary(const SynthSpec& spec) {
  const std::size_t half = spec.planted_terms / 2;
  return {word_list("hi", half), word_list("lo", half), word_list("bg", spec.background_terms),
          word_list("rx", spec.rare_terms)};
}

Corpus generate_synthetic(const SynthSpec& spec) {
  validate(spec);
  const auto vocab = synthetic_vocabulary(spec);
  Rng rng(spec.seed);
  const ZipfSampler background(spec.background_terms, spec.zipf_exponent);

  enum class Kind : std::uint8_t { High, Low, Four };
  std::vector<Kind> kinds;
  kinds.insert(kinds.end(), spec.high, Kind::High);
  kinds.insert(kinds.end(), spec.low, Kind::Low);
  kinds.insert(kinds.end(), spec.four_star, Kind::Four);
  rng.shuffle(std::span(kinds));

  Corpus corpus;
  corpus.source = "synthetic(seed=" + std::to_string(spec.seed) + ")";
  corpus.reviews.reserve(kinds.size());
  const std::size_t half = spec.planted_terms / 2;

  for (std::size_t n = 0; n < kinds.size(); ++n) {
    const Kind kind = kinds[n];
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < spec.background_per_doc; ++i) tokens.push_back(vocab.background[background(rng)]);
    for (std::size_t i = 0; i < spec.rare_per_doc; ++i) {
      tokens.push_back(vocab.rare[static_cast<std::size_t>(rng.below(spec.rare_terms))]);
    }
    for (std::size_t i = 0; i < spec.planted_per_doc; ++i) {
      const bool own = kind != Kind::Four && rng.bernoulli(spec.signal);
      if (own) {
        const auto& pool = kind == Kind::High ? vocab.high_planted : vocab.low_planted;
        tokens.push_back(pool[static_cast<std::size_t>(rng.below(half))]);
      } else {
        const auto pick = static_cast<std::size_t>(rng.below(2 * half));
        tokens.push_back(pick < half ? vocab.high_planted[pick] : vocab.low_planted[pick - half]);
      }
    }

    Review r;
    char id[32];
    std::snprintf(id, sizeof id, "syn-%06zu", n + 1);
    r.review_id = id;
    r.movie = "Synthetic Film " + std::to_string(1 + rng.below(spec.movies));
    switch (kind) {
      case Kind::High: r.stars = 5; break;
      case Kind::Four: r.stars = 4; break;
      case Kind::Low: r.stars = 1 + static_cast<int>(rng.below(3)); break;
    }
    r.text = render_text(tokens, rng);
    corpus.reviews.push_back(std::move(r));
  }
  return corpus;
}

void write_synthetic_lexicon(std::ostream& out, const SynthSpec& spec) {
  const auto vocab = synthetic_vocabulary(spec);
  auto line = [&out](const std::string& w, std::string_view type, std::string_view polarity) {
    out << "type=" << type << " len=1 word1=" << w << " pos1=adj stemmed1=n priorpolarity=" << polarity << '\n';
  };
  // Only part of each planted pool is "known" to the lexicon.
  for (std::size_t i = 0; i < vocab.high_planted.size(); i += 2) line(vocab.high_planted[i], "strongsubj", "positive");
  for (std::size_t i = 0; i < vocab.low_planted.size(); i += 2) line(vocab.low_planted[i], "strongsubj", "negative");
  for (std::size_t i = 0; i < vocab.background.size(); i += 5) {
    line(vocab.background[i], "weaksubj", (i / 5) % 4 == 0 ? "both" : "neutral");
  }
  for (std::size_t i = 1; i < vocab.background.size(); i += 10) {
    line(vocab.background[i], "weaksubj", i % 20 == 1 ? "positive" : "negative");
  }
}

}  // namespace rrp
