#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rrp/corpus.hpp"

namespace rrp {

/// Parameters of the planted-signal review generator.
///
/// Every review carries `background_per_doc` tokens drawn from a Zipf law
/// over `background_terms` class-independent words, `rare_per_doc` tokens
/// from a large pool of rare words (most fall under the min-count filter),
/// and `planted_per_doc` planted tokens. Each planted token comes from the
/// review's own class pool with probability `signal`, otherwise uniformly
/// from the union of both pools, so signal 0 makes planted words
/// independent of the class.
struct SynthSpec {
  std::size_t high = 1540;  // 5-star reviews
  std::size_t low = 460;    // 1-3 star reviews
  std::size_t four_star = 0;
  std::size_t planted_terms = 50;  // split evenly between the two classes
  std::size_t planted_per_doc = 2;
  std::size_t background_terms = 200;
  std::size_t background_per_doc = 60;
  double zipf_exponent = 0.5;
  std::size_t rare_terms = 400;
  std::size_t rare_per_doc = 1;
  std::size_t movies = 8;
  double signal = 1.0;
  std::uint64_t seed = 20190101;
};

void validate(const SynthSpec& spec);

/// Word lists the generator draws from, in index order.
struct SynthVocabulary {
  std::vector<std::string> high_planted;
  std::vector<std::string> low_planted;
  std::vector<std::string> background;
  std::vector<std::string> rare;
};

SynthVocabulary synthetic_vocabulary(const SynthSpec& spec);

/// Reviews in generation order; classes are interleaved at random.
Corpus generate_synthetic(const SynthSpec& spec);

/// A key=value lexicon over the synthetic vocabulary: part of each planted
/// pool as positive/negative, some background words neutral or both.
void write_synthetic_lexicon(std::ostream& out, const SynthSpec& spec);

}  // namespace rrp
