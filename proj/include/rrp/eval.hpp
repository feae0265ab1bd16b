#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrp/corpus.hpp"

namespace rrp {

/// Binary confusion counts with High as the positive class.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  /// The same counts read with Low as the positive class.
  ConfusionMatrix swapped() const { return {tn, fn, fp, tp}; }

  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> predicted, std::span<const Label> gold);

/// Zero-denominator ratios are reported as 0 with the matching flag cleared.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
  std::uint64_t support = 0;  // gold items of this class

  bool f1_defined() const { return precision_defined && recall_defined; }
};

struct Metrics {
  std::uint64_t total = 0;
  double accuracy = 0.0;
  ClassMetrics high;
  ClassMetrics low;
  ClassMetrics macro;     // unweighted mean of the two classes
  ClassMetrics weighted;  // mean weighted by gold support
  double kappa = 0.0;     // Cohen's kappa; 0 when chance agreement is 1
  bool kappa_defined = true;

  /// kappa on a 0..100 scale, the value shown as "kappa-confidence".
  double confidence() const { return kappa * 100.0; }
};

Metrics metrics(const ConfusionMatrix& cm);

nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const Metrics& m);

/// One feature set's results; one cell per classifier column, empty when
/// that run failed.
struct ReportRow {
  std::string name;
  std::vector<std::optional<Metrics>> cells;
  std::vector<std::string> errors;  // parallel to cells, empty when ok
};

struct ReportTable {
  std::vector<std::string> classifiers;
  std::vector<ReportRow> rows;
};

/// TSV grid: features, then Acc/P/R/F per classifier (High class, percent,
/// 2 decimals), then a kappa-confidence column per classifier, then flags.
void render_report(std::ostream& out, const ReportTable& table);
std::string render_report(const ReportTable& table);
nlohmann::json report_to_json(const ReportTable& table);

/// "81.90" for 0.819.
std::string format_percent(double fraction);

}  // namespace rrp
