#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rrp {

enum class Label : std::uint8_t { High, Low };

std::string_view to_string(Label label);
Label label_from_string(std::string_view text);

struct Review {
  std::string review_id;
  std::string movie;
  int stars = 0;  // 1..5
  std::string text;
};

/// Reviews in file order.
struct Corpus {
  std::vector<Review> reviews;
  std::string source;
};

struct LabeledReview {
  Review review;
  Label label;
};

/// Reviews with 4 stars removed; High <=> 5 stars, Low <=> 1..3 stars.
struct LabeledCorpus {
  std::vector<LabeledReview> items;

  std::size_t count(Label label) const;
};

struct Split {
  LabeledCorpus train;
  LabeledCorpus test;
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
};

enum class ReviewFormat { Jsonl, Csv };

ReviewFormat review_format_from_string(std::string_view text);
/// Guess from the extension: .csv is CSV, everything else JSONL.
ReviewFormat review_format_for_path(const std::filesystem::path& path);

/// Parse reviews from a stream. `source` names the input in error messages.
Corpus read_reviews(std::istream& in, ReviewFormat format, std::string source);
Corpus load_reviews(const std::filesystem::path& path, ReviewFormat format);

void write_reviews_jsonl(std::ostream& out, const Corpus& corpus);

/// Map star ratings onto the binary High/Low problem, dropping 4-star reviews.
LabeledCorpus label_binary(const Corpus& corpus);

/// Stratified, seeded train/test split. Each class contributes
/// floor(train_fraction * class size) items to train; membership within a
/// class is a seeded permutation. Both partitions keep input order.
Split split(const LabeledCorpus& corpus, double train_fraction, std::uint64_t seed);

/// Per-movie star histogram, movies in order of first appearance.
struct MovieSummary {
  std::string movie;
  std::array<std::size_t, 5> by_stars{};  // index 0 = 1 star

  std::size_t total() const;
  std::size_t stars(int s) const { return by_stars.at(static_cast<std::size_t>(s - 1)); }
};

std::vector<MovieSummary> summarize(const Corpus& corpus);

/// TSV with columns movie, reviews, 5..1 star counts.
void write_summary_tsv(std::ostream& out, const std::vector<MovieSummary>& rows);

/// CRC-32 over the ordered review ids of both partitions.
std::uint32_t membership_digest(const Split& s);

}  // namespace rrp
