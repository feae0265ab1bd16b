// rrp: command-line front end for the review rating prediction toolkit.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rrp/config.hpp"
#include "rrp/corpus.hpp"
#include "rrp/errors.hpp"
#include "rrp/eval.hpp"
#include "rrp/experiment.hpp"
#include "rrp/featsel.hpp"
#include "rrp/persist.hpp"
#include "rrp/synth.hpp"
#include "rrp/textprep.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct OutputOptions {
  std::string out;
  std::string format = "tsv";

  bool json() const { return format == "json"; }
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Write output here instead of stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
}

void emit(const OutputOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw rrp::DataError("cannot write '" + o.out + "'");
  f << text;
}

rrp::Corpus load_reviews_arg(const std::string& path, const std::string& input_format) {
  const auto format = input_format.empty() ? rrp::review_format_for_path(path)
                                           : rrp::review_format_from_string(input_format);
  return rrp::load_reviews(path, format);
}

std::vector<rrp::TokenizedDoc> prepared_docs(const rrp::LabeledCorpus& labeled, const rrp::StopwordSet& stop) {
  auto docs = rrp::tokenize_corpus(labeled);
  for (auto& d : docs) rrp::remove_stopwords(d, stop);
  return docs;
}

rrp::StopwordSet stopwords_arg(const std::string& path) {
  return path.empty() ? rrp::default_stopwords() : rrp::load_stopwords(path);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Review rating prediction: feature selection, naive Bayes and linear SVM"};
  app.require_subcommand(1);

  // summarize
  std::string reviews_path, input_format;
  OutputOptions summarize_out;
  auto* summarize_cmd = app.add_subcommand("summarize", "Per-movie star counts as TSV");
  summarize_cmd->add_option("--reviews", reviews_path, "Review file")->required();
  summarize_cmd->add_option("--input-format", input_format, "jsonl or csv (default: by extension)");
  add_output_options(summarize_cmd, summarize_out);

  // prep
  std::vector<std::string> prep_reviews;
  std::string stopwords_path;
  std::size_t prep_min_count = 10;
  OutputOptions prep_out;
  auto* prep_cmd = app.add_subcommand("prep", "Sentence, token and vocabulary counts per corpus");
  prep_cmd->add_option("--reviews", prep_reviews, "Review file(s)")->required();
  prep_cmd->add_option("--input-format", input_format, "jsonl or csv (default: by extension)");
  prep_cmd->add_option("--stopwords", stopwords_path, "Stopword file (default: bundled list)");
  prep_cmd->add_option("--min-count", prep_min_count, "Vocabulary min count")->check(CLI::PositiveNumber);
  add_output_options(prep_cmd, prep_out);

  // rank-features
  std::string method = "infogain", lexicon_path;
  std::size_t top_k = 10;
  std::optional<std::size_t> rank_min_count;
  OutputOptions rank_out;
  auto* rank_cmd = app.add_subcommand("rank-features", "Rank candidate features over a labeled corpus");
  rank_cmd->add_option("--reviews", reviews_path, "Review file")->required();
  rank_cmd->add_option("--input-format", input_format, "jsonl or csv (default: by extension)");
  rank_cmd->add_option("--method", method, "Ranking method")->check(CLI::IsMember({"tfidf", "infogain", "sentiment"}));
  rank_cmd->add_option("--top-k", top_k, "Number of features (0 = all, sentiment only)");
  rank_cmd->add_option("--lexicon", lexicon_path, "Sentiment lexicon (tff or tsv)");
  rank_cmd->add_option("--min-count", rank_min_count,
                       "Vocabulary min count (default 10); for sentiment, the word count threshold (default 5)");
  rank_cmd->add_option("--stopwords", stopwords_path, "Stopword file (default: bundled list)");
  add_output_options(rank_cmd, rank_out);

  // experiment / train / sweep share config handling
  std::vector<std::string> config_paths;
  std::optional<std::uint64_t> seed;
  bool paper_faithful = false, no_timings = false, reference_grid = false;
  OutputOptions exp_out;

  auto* experiment_cmd = app.add_subcommand("experiment", "Run one experiment from a config file");
  experiment_cmd->add_option("--config", config_paths, "Config file")->required()->expected(1);
  experiment_cmd->add_option("--seed", seed, "Override split and model seeds");
  experiment_cmd->add_flag("--paper-faithful", paper_faithful, "Rank features on the whole corpus");
  experiment_cmd->add_flag("--no-timings", no_timings, "Omit the timings section");
  add_output_options(experiment_cmd, exp_out);

  std::string model_path;
  auto* train_cmd = app.add_subcommand("train", "Train a model from a config file and save it");
  train_cmd->add_option("--config", config_paths, "Config file")->required()->expected(1);
  train_cmd->add_option("--out", model_path, "Model file to write")->required();
  train_cmd->add_option("--seed", seed, "Override split and model seeds");
  train_cmd->add_flag("--paper-faithful", paper_faithful, "Rank features on the whole corpus");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of experiments and render the combined table");
  sweep_cmd->add_option("--config", config_paths, "Config file(s)")->required();
  sweep_cmd->add_option("--seed", seed, "Override split and model seeds");
  sweep_cmd->add_flag("--paper-faithful", paper_faithful, "Rank features on the whole corpus");
  sweep_cmd->add_flag("--reference-grid", reference_grid,
                      "Cross the seven reference feature sets with SVM and NB");
  add_output_options(sweep_cmd, exp_out);

  // predict / evaluate
  OutputOptions predict_out;
  auto* predict_cmd = app.add_subcommand("predict", "Label reviews with a saved model");
  predict_cmd->add_option("--model", model_path, "Model file")->required();
  predict_cmd->add_option("--reviews", reviews_path, "Review file")->required();
  predict_cmd->add_option("--input-format", input_format, "jsonl or csv (default: by extension)");
  add_output_options(predict_cmd, predict_out);

  OutputOptions evaluate_out;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a saved model on rated reviews");
  evaluate_cmd->add_option("--model", model_path, "Model file")->required();
  evaluate_cmd->add_option("--reviews", reviews_path, "Review file")->required();
  evaluate_cmd->add_option("--input-format", input_format, "jsonl or csv (default: by extension)");
  add_output_options(evaluate_cmd, evaluate_out);

  // synth
  rrp::SynthSpec synth;
  std::string synth_out, synth_lexicon;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-signal synthetic review corpus");
  synth_cmd->add_option("--out", synth_out, "JSONL review file to write")->required();
  synth_cmd->add_option("--lexicon-out", synth_lexicon, "Also write a matching tff lexicon");
  synth_cmd->add_option("--high", synth.high, "5-star reviews");
  synth_cmd->add_option("--low", synth.low, "1-3 star reviews");
  synth_cmd->add_option("--four-star", synth.four_star, "4-star reviews");
  synth_cmd->add_option("--planted", synth.planted_terms, "Planted class-specific terms (even)");
  synth_cmd->add_option("--planted-per-doc", synth.planted_per_doc, "Planted tokens per review");
  synth_cmd->add_option("--background", synth.background_terms, "Background vocabulary size");
  synth_cmd->add_option("--background-per-doc", synth.background_per_doc, "Background tokens per review");
  synth_cmd->add_option("--zipf", synth.zipf_exponent, "Background Zipf exponent");
  synth_cmd->add_option("--rare", synth.rare_terms, "Rare vocabulary size");
  synth_cmd->add_option("--signal", synth.signal, "Probability a planted token matches its class")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*summarize_cmd) {
      const auto corpus = load_reviews_arg(reviews_path, input_format);
      const auto rows = rrp::summarize(corpus);
      if (summarize_out.json()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows) j.push_back({{"movie", r.movie}, {"reviews", r.total()}, {"by_stars", r.by_stars}});
        emit(summarize_out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        rrp::write_summary_tsv(s, rows);
        emit(summarize_out, s.str());
      }
    } else if (*prep_cmd) {
      const auto stop = stopwords_arg(stopwords_path);
      std::ostringstream s;
      nlohmann::json j = nlohmann::json::array();
      s << "corpus\treviews\tsentences\ttokens\ttokens_no_stopwords\tvocabulary\n";
      for (const auto& path : prep_reviews) {
        const auto corpus = load_reviews_arg(path, input_format);
        std::size_t sentences = 0, tokens = 0, kept = 0;
        std::vector<rrp::TokenizedDoc> docs;
        for (const auto& r : corpus.reviews) {
          sentences += rrp::split_sentences(r.text).size();
          rrp::TokenizedDoc d{r.review_id, rrp::Label::High, rrp::tokenize(r.text)};
          tokens += d.tokens.size();
          rrp::remove_stopwords(d, stop);
          kept += d.tokens.size();
          docs.push_back(std::move(d));
        }
        const auto vocab = rrp::build_vocabulary(docs, prep_min_count, stop);
        s << path << '\t' << corpus.reviews.size() << '\t' << sentences << '\t' << tokens << '\t' << kept << '\t'
          << vocab.size() << '\n';
        j.push_back({{"corpus", path},
                     {"reviews", corpus.reviews.size()},
                     {"sentences", sentences},
                     {"tokens", tokens},
                     {"tokens_no_stopwords", kept},
                     {"vocabulary", vocab.size()}});
      }
      emit(prep_out, prep_out.json() ? j.dump(2) + "\n" : s.str());
    } else if (*rank_cmd) {
      const auto labeled = rrp::label_binary(load_reviews_arg(reviews_path, input_format));
      const auto docs = prepared_docs(labeled, stopwords_arg(stopwords_path));
      const auto m = rrp::feature_method_from_string(method);
      rrp::RankedFeatures ranked;
      if (m == rrp::FeatureMethod::Sentiment) {
        if (lexicon_path.empty()) throw rrp::ConfigError("--lexicon is required for --method sentiment");
        const auto lex = rrp::load_lexicon(lexicon_path, rrp::lexicon_format_for_path(lexicon_path));
        for (const auto& w : lex.warnings) std::cerr << "warning: " << w << '\n';
        ranked = rrp::sentiment_rank(docs, lex, rank_min_count.value_or(5), top_k);
      } else {
        const auto vocab = rrp::build_vocabulary(docs, rank_min_count.value_or(10), stopwords_arg(stopwords_path));
        ranked = m == rrp::FeatureMethod::Tfidf ? rrp::tfidf_rank(docs, vocab, top_k)
                                                : rrp::infogain_rank(docs, vocab, top_k);
      }
      if (rank_out.json()) {
        nlohmann::json j = nlohmann::json::array();
        for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
          j.push_back({{"rank", i + 1}, {"term", ranked.entries[i].term}, {"score", ranked.entries[i].score}});
        }
        emit(rank_out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "rank\tterm\tscore\n";
        for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
          s << i + 1 << '\t' << ranked.entries[i].term << '\t' << fixed(ranked.entries[i].score, 6) << '\n';
        }
        emit(rank_out, s.str());
      }
    } else if (*experiment_cmd || *train_cmd) {
      auto cfg = rrp::load_config(config_paths.front()).experiment;
      if (seed) cfg.override_seed(*seed);
      if (paper_faithful) cfg.features.paper_faithful = true;
      if (*train_cmd) cfg.model.save = model_path;
      const auto result = rrp::run_experiment(cfg);
      if (*train_cmd) {
        std::cerr << "saved " << rrp::display_name(cfg.model.kind) << " model over "
                  << result.classifier.features.terms().size() << " features to " << model_path
                  << " (test accuracy " << rrp::format_percent(result.report.test.metrics.accuracy) << ")\n";
      } else {
        emit(exp_out, exp_out.json() ? rrp::to_json(result.report, !no_timings).dump(2) + "\n"
                                     : rrp::render_text(result.report, !no_timings));
      }
    } else if (*sweep_cmd) {
      std::vector<rrp::ExperimentConfig> configs;
      for (const auto& path : config_paths) {
        auto file = rrp::load_config(path);
        if (reference_grid) {
          file.sweep.features = rrp::reference_feature_sets();
          file.sweep.models = {rrp::ModelKind::Svm, rrp::ModelKind::Nb};
        }
        for (auto& c : rrp::expand_sweep(file.experiment, file.sweep)) {
          if (seed) c.override_seed(*seed);
          if (paper_faithful) c.features.paper_faithful = true;
          configs.push_back(std::move(c));
        }
      }
      const auto result = rrp::sweep(configs);
      for (const auto& run : result.runs) {
        if (!run.error.empty()) std::cerr << "warning: " << run.config.features.label() << ": " << run.error << '\n';
      }
      emit(exp_out, exp_out.json() ? rrp::report_to_json(result.table).dump(2) + "\n"
                                   : rrp::render_report(result.table));
    } else if (*predict_cmd) {
      const auto clf = rrp::load_model(model_path);
      const auto corpus = load_reviews_arg(reviews_path, input_format);
      std::ostringstream s;
      nlohmann::json j = nlohmann::json::array();
      s << "review_id\tlabel\tscore\n";
      for (const auto& r : corpus.reviews) {
        const auto p = clf.predict(rrp::TokenizedDoc{r.review_id, rrp::Label::High, rrp::tokenize(r.text)});
        s << r.review_id << '\t' << rrp::to_string(p.label) << '\t' << exact(p.score) << '\n';
        j.push_back({{"review_id", r.review_id}, {"label", rrp::to_string(p.label)}, {"score", p.score}});
      }
      emit(predict_out, predict_out.json() ? j.dump(2) + "\n" : s.str());
    } else if (*evaluate_cmd) {
      const auto clf = rrp::load_model(model_path);
      const auto labeled = rrp::label_binary(load_reviews_arg(reviews_path, input_format));
      std::vector<rrp::Label> predicted, gold;
      for (const auto& item : labeled.items) {
        predicted.push_back(clf.predict(rrp::tokenize_review(item)).label);
        gold.push_back(item.label);
      }
      const auto cm = rrp::confusion(predicted, gold);
      const auto m = rrp::metrics(cm);
      auto label_it = clf.training_config.find("features.label");
      rrp::ReportTable table;
      table.classifiers = {std::string(rrp::display_name(clf.kind()))};
      table.rows.push_back({label_it == clf.training_config.end() ? model_path : label_it->second, {m}, {""}});
      if (evaluate_out.json()) {
        auto j = rrp::report_to_json(table);
        j["confusion"] = rrp::to_json(cm);
        emit(evaluate_out, j.dump(2) + "\n");
      } else {
        emit(evaluate_out, rrp::render_report(table) + "confusion\ttp=" + std::to_string(cm.tp) +
                               "\tfp=" + std::to_string(cm.fp) + "\tfn=" + std::to_string(cm.fn) +
                               "\ttn=" + std::to_string(cm.tn) + "\n");
      }
    } else if (*synth_cmd) {
      const auto corpus = rrp::generate_synthetic(synth);
      std::ofstream out(synth_out, std::ios::binary);
      if (!out) throw rrp::DataError("cannot write '" + synth_out + "'");
      rrp::write_reviews_jsonl(out, corpus);
      if (!synth_lexicon.empty()) {
        std::ofstream lex(synth_lexicon, std::ios::binary);
        if (!lex) throw rrp::DataError("cannot write '" + synth_lexicon + "'");
        rrp::write_synthetic_lexicon(lex, synth);
      }
    }
  } catch (const rrp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const rrp::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const rrp::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
