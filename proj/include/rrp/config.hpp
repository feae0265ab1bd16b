#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rrp/corpus.hpp"
#include "rrp/featsel.hpp"
#include "rrp/persist.hpp"

namespace rrp {

struct DataConfig {
  std::filesystem::path reviews;
  std::optional<ReviewFormat> format;  // guessed from the extension when unset
  std::optional<std::filesystem::path> lexicon;
  std::optional<LexiconFormat> lexicon_format;
  std::optional<std::filesystem::path> stopwords;  // bundled list when unset
  std::size_t min_count = 10;
};

struct SplitConfig {
  double train_fraction = 0.9;
  std::uint64_t seed = 1;
};

struct FeatureConfig {
  std::string name;  // report row label; derived when empty
  FeatureMethod method = FeatureMethod::Infogain;
  std::size_t top_k = 200;  // 0 = keep all (sentiment only)
  std::optional<Weighting> weighting;  // per-method default when unset
  std::size_t sentiment_min_count = 5;
  /// Rank features and compute idf on the whole corpus instead of the
  /// training partition.
  bool paper_faithful = false;

  std::string label() const;
  Weighting effective_weighting() const;
};

struct ModelConfig {
  ModelKind kind = ModelKind::Svm;
  double C = 1.0;
  double tol = 1e-4;
  std::size_t max_iter = 1000;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> save;
};

struct ExperimentConfig {
  DataConfig data;
  SplitConfig split;
  FeatureConfig features;
  ModelConfig model;

  /// Range checks plus existence of every referenced file.
  void validate() const;
  /// Canonical config text; parsing it back gives an equal config.
  std::string to_text() const;
  void override_seed(std::uint64_t seed);
};

/// Feature specs and classifiers to cross in a sweep.
struct SweepSpec {
  std::vector<FeatureConfig> features;
  std::vector<ModelKind> models;

  bool empty() const { return features.empty() && models.empty(); }
};

struct ConfigFile {
  ExperimentConfig experiment;
  SweepSpec sweep;
};

/// Sections [data] [split] [features] [model] [sweep] with `key = value`
/// lines; '#' or ';' starts a comment line. Relative paths resolve against
/// base_dir.
ConfigFile parse_config(std::istream& in, const std::string& source, const std::filesystem::path& base_dir);
ConfigFile load_config(const std::filesystem::path& path);

/// "tfidf:500" / "infogain:200" / "sentiment" / "sentiment:5" (min count).
FeatureConfig parse_feature_spec(const std::string& text);

/// The seven feature sets of the reference grid: tf-idf 500 and 900,
/// information gain 200/600/900/1000, sentiment words with count >= 5.
std::vector<FeatureConfig> reference_feature_sets();

/// One config per (feature set, classifier) pair, feature-major. An empty
/// spec yields just the base config.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& base, const SweepSpec& spec);

}  // namespace rrp
