#include "rrp/eval.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "rrp/errors.hpp"

namespace rrp {

ConfusionMatrix confusion(std::span<const Label> predicted, std::span<const Label> gold) {
  if (predicted.size() != gold.size()) {
    throw DataError("prediction/gold length mismatch: " + std::to_string(predicted.size()) + " vs " +
                    std::to_string(gold.size()));
  }
  if (gold.empty()) throw DataError("cannot evaluate an empty prediction list");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool pred_high = predicted[i] == Label::High;
    const bool gold_high = gold[i] == Label::High;
    if (pred_high && gold_high) ++cm.tp;
    else if (pred_high) ++cm.fp;
    else if (gold_high) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den, bool& defined) {
  defined = den != 0;
  return defined ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

ClassMetrics class_metrics(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp, m.precision_defined);
  m.recall = ratio(tp, tp + fn, m.recall_defined);
  m.support = tp + fn;
  const double pr = m.precision + m.recall;
  m.f1 = (m.f1_defined() && pr > 0.0) ? 2.0 * m.precision * m.recall / pr : 0.0;
  return m;
}

ClassMetrics blend(const ClassMetrics& a, double wa, const ClassMetrics& b, double wb) {
  ClassMetrics m;
  m.precision = wa * a.precision + wb * b.precision;
  m.recall = wa * a.recall + wb * b.recall;
  m.f1 = wa * a.f1 + wb * b.f1;
  m.precision_defined = a.precision_defined && b.precision_defined;
  m.recall_defined = a.recall_defined && b.recall_defined;
  m.support = a.support + b.support;
  return m;
}

}  // namespace

Metrics metrics(const ConfusionMatrix& cm) {
  const std::uint64_t n = cm.total();
  if (n == 0) throw DataError("metrics need a nonempty confusion matrix");
  Metrics m;
  m.total = n;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
  m.high = class_metrics(cm.tp, cm.fp, cm.fn);
  m.low = class_metrics(cm.tn, cm.fn, cm.fp);
  m.macro = blend(m.high, 0.5, m.low, 0.5);
  const double nd = static_cast<double>(n);
  m.weighted = blend(m.high, static_cast<double>(m.high.support) / nd, m.low,
                     static_cast<double>(m.low.support) / nd);

  // kappa = (n*agree - sum of marginal products) / (n^2 - sum of marginal
  // products); integer arithmetic makes a constant predictor give exactly 0.
  using Wide = unsigned __int128;
  const Wide chance = Wide(cm.tp + cm.fp) * (cm.tp + cm.fn) + Wide(cm.fn + cm.tn) * (cm.fp + cm.tn);
  const Wide observed = Wide(n) * (cm.tp + cm.tn);
  const Wide all = Wide(n) * n;
  if (chance == all) {
    m.kappa = 0.0;
    m.kappa_defined = false;
  } else {
    const double num = observed >= chance ? static_cast<double>(observed - chance)
                                          : -static_cast<double>(chance - observed);
    m.kappa = num / static_cast<double>(all - chance);
  }
  return m;
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

namespace {

nlohmann::json to_json(const ClassMetrics& c) {
  return {{"precision", c.precision},
          {"recall", c.recall},
          {"f1", c.f1},
          {"precision_defined", c.precision_defined},
          {"recall_defined", c.recall_defined},
          {"support", c.support}};
}

}  // namespace

nlohmann::json to_json(const Metrics& m) {
  return {{"total", m.total},
          {"accuracy", m.accuracy},
          {"high", to_json(m.high)},
          {"low", to_json(m.low)},
          {"macro", to_json(m.macro)},
          {"weighted", to_json(m.weighted)},
          {"kappa", m.kappa},
          {"kappa_defined", m.kappa_defined},
          {"kappa_confidence", m.confidence()}};
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

void render_report(std::ostream& out, const ReportTable& table) {
  out << "features";
  for (const auto& c : table.classifiers) out << '\t' << c << "_Acc\t" << c << "_P\t" << c << "_R\t" << c << "_F";
  for (const auto& c : table.classifiers) out << '\t' << c << "_kappa-confidence";
  out << "\tflags\n";

  for (const auto& row : table.rows) {
    std::vector<std::string> flags;
    out << row.name;
    for (std::size_t i = 0; i < table.classifiers.size(); ++i) {
      const auto& cell = i < row.cells.size() ? row.cells[i] : std::nullopt;
      if (!cell) {
        out << "\tfailed\tfailed\tfailed\tfailed";
        continue;
      }
      out << '\t' << format_percent(cell->accuracy) << '\t' << format_percent(cell->high.precision) << '\t'
          << format_percent(cell->high.recall) << '\t' << format_percent(cell->high.f1);
      if (!cell->high.precision_defined) flags.push_back(table.classifiers[i] + ":P_undefined");
      if (!cell->high.recall_defined) flags.push_back(table.classifiers[i] + ":R_undefined");
      if (!cell->kappa_defined) flags.push_back(table.classifiers[i] + ":kappa_undefined");
    }
    for (std::size_t i = 0; i < table.classifiers.size(); ++i) {
      const auto& cell = i < row.cells.size() ? row.cells[i] : std::nullopt;
      out << '\t' << (cell ? format_percent(cell->kappa) : std::string("failed"));
    }
    for (std::size_t i = 0; i < row.errors.size() && i < table.classifiers.size(); ++i) {
      if (!row.errors[i].empty()) flags.push_back(table.classifiers[i] + ":failed: " + row.errors[i]);
    }
    out << '\t';
    for (std::size_t i = 0; i < flags.size(); ++i) out << (i ? ";" : "") << flags[i];
    out << '\n';
  }
}

std::string render_report(const ReportTable& table) {
  std::ostringstream out;
  render_report(out, table);
  return out.str();
}

nlohmann::json report_to_json(const ReportTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json cells = nlohmann::json::object();
    for (std::size_t i = 0; i < table.classifiers.size(); ++i) {
      const auto& cell = i < row.cells.size() ? row.cells[i] : std::nullopt;
      if (cell) {
        cells[table.classifiers[i]] = to_json(*cell);
      } else {
        const std::string err = i < row.errors.size() ? row.errors[i] : "";
        cells[table.classifiers[i]] = {{"failed", true}, {"error", err}};
      }
    }
    rows.push_back({{"features", row.name}, {"results", cells}});
  }
  return {{"classifiers", table.classifiers}, {"rows", rows}};
}

}  // namespace rrp
