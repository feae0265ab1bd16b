#include "rrp/experiment.hpp"

#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <sstream>

#include "rrp/errors.hpp"
#include "rrp/textprep.hpp"

namespace rrp {

std::uint32_t feature_digest(const RankedFeatures& features) {
  uLong crc = crc32(0L, Z_NULL, 0);
  for (const auto& e : features.entries) {
    crc = crc32(crc, reinterpret_cast<const Bytef*>(e.term.data()), static_cast<uInt>(e.term.size()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>("\n"), 1);
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {

using Clock = std::chrono::steady_clock;

class StageRunner {
 public:
  explicit StageRunner(std::vector<std::pair<std::string, double>>& timings) : timings_(timings) {}

  template <typename F>
  auto operator()(const char* name, F&& f) {
    const auto start = Clock::now();
    auto record = [&] {
      const std::chrono::duration<double, std::milli> ms = Clock::now() - start;
      timings_.emplace_back(name, ms.count());
    };
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        record();
      } else {
        auto result = f();
        record();
        return result;
      }
    } catch (const ConfigError& e) {
      throw ConfigError(prefix(name) + e.what());
    } catch (const DataError& e) {
      throw DataError(prefix(name) + e.what());
    } catch (const InvariantError& e) {
      throw InvariantError(prefix(name) + e.what());
    }
  }

 private:
  static std::string prefix(const char* name) { return std::string("stage '") + name + "': "; }

  std::vector<std::pair<std::string, double>>& timings_;
};

PartitionResult evaluate(const Classifier& clf, const std::vector<FeatureVector>& vectors) {
  std::vector<Label> predicted, gold;
  predicted.reserve(vectors.size());
  gold.reserve(vectors.size());
  for (const auto& v : vectors) {
    predicted.push_back(clf.predict(v).label);
    gold.push_back(*v.label);
  }
  PartitionResult r;
  r.confusion = confusion(predicted, gold);
  r.metrics = metrics(r.confusion);
  return r;
}

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  auto& report = result.report;
  report.config = config;
  StageRunner stage(report.timings_ms);

  stage("validate", [&] { config.validate(); });

  const Corpus corpus = stage("load", [&] {
    const auto format = config.data.format.value_or(review_format_for_path(config.data.reviews));
    return load_reviews(config.data.reviews, format);
  });
  report.corpus_summary = summarize(corpus);

  const LabeledCorpus labeled = stage("label", [&] { return label_binary(corpus); });
  report.labeled = labeled.items.size();

  const Split parts = stage("split", [&] {
    return split(labeled, config.split.train_fraction, config.split.seed);
  });
  report.train_high = parts.train.count(Label::High);
  report.train_low = parts.train.count(Label::Low);
  report.test_high = parts.test.count(Label::High);
  report.test_low = parts.test.count(Label::Low);
  report.split_digest = membership_digest(parts);

  const StopwordSet stopwords = stage("stopwords", [&] {
    return config.data.stopwords ? load_stopwords(*config.data.stopwords) : default_stopwords();
  });

  auto prep = [&](const LabeledCorpus& c) {
    auto docs = tokenize_corpus(c);
    for (auto& d : docs) remove_stopwords(d, stopwords);
    return docs;
  };
  const auto train_docs = stage("prep", [&] { return prep(parts.train); });
  const auto test_docs = stage("prep-test", [&] { return prep(parts.test); });

  // Ranking statistics come from the training partition only unless the
  // whole-corpus procedure is requested.
  std::vector<TokenizedDoc> ranking_docs = train_docs;
  if (config.features.paper_faithful) ranking_docs.insert(ranking_docs.end(), test_docs.begin(), test_docs.end());

  const Vocabulary vocab = stage("vocabulary", [&] {
    return build_vocabulary(ranking_docs, config.data.min_count, stopwords);
  });
  report.vocabulary_size = vocab.size();

  report.features = stage("rank-features", [&] {
    switch (config.features.method) {
      case FeatureMethod::Tfidf: return tfidf_rank(ranking_docs, vocab, config.features.top_k);
      case FeatureMethod::Infogain: return infogain_rank(ranking_docs, vocab, config.features.top_k);
      case FeatureMethod::Sentiment: {
        const auto format = config.data.lexicon_format.value_or(lexicon_format_for_path(*config.data.lexicon));
        const auto lexicon = load_lexicon(*config.data.lexicon, format);
        return sentiment_rank(ranking_docs, lexicon, config.features.sentiment_min_count, config.features.top_k);
      }
    }
    throw InvariantError("unhandled feature method");
  });
  report.feature_digest = feature_digest(report.features);

  const Weighting weighting = config.features.effective_weighting();
  result.classifier.features = stage("feature-space", [&] {
    std::optional<IdfTable> idf;
    if (weighting == Weighting::Tfidf) {
      const auto terms = report.features.terms();
      idf = compute_idf(ranking_docs, terms);
    }
    return FeatureSpace::from_ranked(report.features, weighting, idf ? &*idf : nullptr);
  });
  const auto& space = result.classifier.features;
  const auto train_vectors = stage("vectorize", [&] { return vectorize_all(train_docs, space); });
  const auto test_vectors = stage("vectorize-test", [&] { return vectorize_all(test_docs, space); });

  stage("train", [&] {
    if (config.model.kind == ModelKind::Svm) {
      SvmParams p{config.model.C, config.model.tol, config.model.max_iter, config.model.seed};
      SVMModel m = train_svm(train_vectors, p);
      report.svm_iterations = m.iterations;
      report.svm_converged = m.converged;
      report.svm_final_violation = m.final_violation;
      result.classifier.model = std::move(m);
    } else {
      result.classifier.model = train_nb(train_vectors, config.model.alpha);
    }
  });

  auto& echo = result.classifier.training_config;
  echo["features.method"] = std::string(to_string(config.features.method));
  echo["features.label"] = config.features.label();
  echo["features.paper_faithful"] = config.features.paper_faithful ? "true" : "false";
  echo["split.seed"] = std::to_string(config.split.seed);
  echo["split.train_fraction"] = hex_double(config.split.train_fraction);
  echo["data.min_count"] = std::to_string(config.data.min_count);
  if (config.model.kind == ModelKind::Svm) {
    echo["model.C"] = hex_double(config.model.C);
    echo["model.tol"] = hex_double(config.model.tol);
    echo["model.max_iter"] = std::to_string(config.model.max_iter);
    echo["model.seed"] = std::to_string(config.model.seed);
  } else {
    echo["model.alpha"] = hex_double(config.model.alpha);
  }

  report.train = stage("evaluate-train", [&] { return evaluate(result.classifier, train_vectors); });
  report.test = stage("evaluate-test", [&] { return evaluate(result.classifier, test_vectors); });

  if (config.model.save) {
    stage("save-model", [&] { save_model(result.classifier, *config.model.save); });
  }
  return result;
}

namespace {

ReportTable single_row_table(const ExperimentReport& r, const Metrics& m) {
  ReportTable t;
  t.classifiers = {std::string(display_name(r.config.model.kind))};
  t.rows.push_back({r.config.features.label(), {m}, {""}});
  return t;
}

}  // namespace

std::string render_text(const ExperimentReport& r, bool include_timings) {
  std::ostringstream out;
  out << "# review rating experiment\n\n";
  out << "## config\n" << r.config.to_text() << '\n';

  out << "## corpus\n";
  write_summary_tsv(out, r.corpus_summary);
  out << "labeled\t" << r.labeled << '\n';
  out << "train\t" << r.train_high + r.train_low << "\thigh=" << r.train_high << "\tlow=" << r.train_low << '\n';
  out << "test\t" << r.test_high + r.test_low << "\thigh=" << r.test_high << "\tlow=" << r.test_low << '\n';
  out << "split_digest\t" << hex32(r.split_digest) << "\n\n";

  out << "## features\n";
  out << "method\t" << to_string(r.features.method) << '\n';
  out << "vocabulary\t" << r.vocabulary_size << '\n';
  out << "selected\t" << r.features.size() << '\n';
  out << "digest\t" << hex32(r.feature_digest) << '\n';
  out << "rank\tterm\tscore\n";
  for (std::size_t i = 0; i < r.features.entries.size() && i < 10; ++i) {
    out << i + 1 << '\t' << r.features.entries[i].term << '\t' << fixed6(r.features.entries[i].score) << '\n';
  }
  out << '\n';

  auto partition = [&](const char* title, const PartitionResult& p) {
    out << "## " << title << '\n';
    render_report(out, single_row_table(r, p.metrics));
    out << "confusion\ttp=" << p.confusion.tp << "\tfp=" << p.confusion.fp << "\tfn=" << p.confusion.fn
        << "\ttn=" << p.confusion.tn << '\n';
    out << "macro_f1\t" << format_percent(p.metrics.macro.f1) << "\tweighted_f1\t"
        << format_percent(p.metrics.weighted.f1) << "\n\n";
  };
  partition("train", r.train);
  partition("test", r.test);

  if (r.svm_iterations) {
    out << "## optimizer\n";
    out << "iterations\t" << *r.svm_iterations << '\n';
    out << "converged\t" << (*r.svm_converged ? "true" : "false") << '\n';
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6e", *r.svm_final_violation);
    out << "final_violation\t" << buf << "\n\n";
  }

  if (include_timings) {
    out << "## timings\n";
    for (const auto& [name, ms] : r.timings_ms) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.3f", ms);
      out << name << "_ms\t" << buf << '\n';
    }
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentReport& r, bool include_timings) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& e : r.features.entries) features.push_back({{"term", e.term}, {"score", e.score}});
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& m : r.corpus_summary) {
    summary.push_back({{"movie", m.movie}, {"reviews", m.total()}, {"by_stars", m.by_stars}});
  }
  auto partition = [](const PartitionResult& p) {
    return nlohmann::json{{"confusion", to_json(p.confusion)}, {"metrics", to_json(p.metrics)}};
  };
  nlohmann::json j{
      {"config", r.config.to_text()},
      {"corpus", {{"summary", summary},
                  {"labeled", r.labeled},
                  {"train", {{"high", r.train_high}, {"low", r.train_low}}},
                  {"test", {{"high", r.test_high}, {"low", r.test_low}}},
                  {"split_digest", hex32(r.split_digest)}}},
      {"features", {{"label", r.config.features.label()},
                    {"method", to_string(r.features.method)},
                    {"vocabulary", r.vocabulary_size},
                    {"digest", hex32(r.feature_digest)},
                    {"ranked", features}}},
      {"classifier", display_name(r.config.model.kind)},
      {"train", partition(r.train)},
      {"test", partition(r.test)},
  };
  if (r.svm_iterations) {
    j["optimizer"] = {{"iterations", *r.svm_iterations},
                      {"converged", *r.svm_converged},
                      {"final_violation", *r.svm_final_violation}};
  }
  if (include_timings) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [name, ms] : r.timings_ms) t[name + "_ms"] = ms;
    j["timings"] = t;
  }
  return j;
}

SweepResult sweep(std::span<const ExperimentConfig> configs) {
  if (configs.empty()) throw ConfigError("sweep needs at least one config");
  SweepResult result;
  auto& table = result.table;

  auto column_of = [&](ModelKind kind) {
    const std::string name(display_name(kind));
    for (std::size_t i = 0; i < table.classifiers.size(); ++i) {
      if (table.classifiers[i] == name) return i;
    }
    table.classifiers.push_back(name);
    return table.classifiers.size() - 1;
  };
  auto row_of = [&](const std::string& label) -> ReportRow& {
    for (auto& row : table.rows) {
      if (row.name == label) return row;
    }
    table.rows.push_back({label, {}, {}});
    return table.rows.back();
  };

  for (const auto& cfg : configs) {
    SweepRun run{cfg, std::nullopt, {}};
    try {
      run.report = run_experiment(cfg).report;
    } catch (const Error& e) {
      run.error = e.what();
    }
    const std::size_t col = column_of(cfg.model.kind);
    auto& row = row_of(cfg.features.label());
    // Rows are resized lazily as classifier columns appear.
    if (row.cells.size() <= col) {
      row.cells.resize(col + 1);
      row.errors.resize(col + 1);
    }
    if (run.report) row.cells[col] = run.report->test.metrics;
    else row.errors[col] = run.error;
    result.runs.push_back(std::move(run));
  }
  for (auto& row : table.rows) {
    row.cells.resize(table.classifiers.size());
    row.errors.resize(table.classifiers.size());
  }
  return result;
}

}  // namespace rrp
