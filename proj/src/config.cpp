#include "rrp/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "rrp/errors.hpp"

namespace rrp {

std::string FeatureConfig::label() const {
  if (!name.empty()) return name;
  if (method == FeatureMethod::Sentiment) {
    std::string s = "sentiment-min" + std::to_string(sentiment_min_count);
    if (top_k > 0) s += "-top" + std::to_string(top_k);
    return s;
  }
  return std::string(to_string(method)) + "-" + std::to_string(top_k);
}

Weighting FeatureConfig::effective_weighting() const { return weighting.value_or(default_weighting(method)); }

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T v{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError("invalid value '" + text + "' for " + what);
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean '" + text + "' for " + what);
}

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InvariantError("cannot format double");
  return std::string(buf, end);
}

}  // namespace

FeatureConfig parse_feature_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(trim(part));
  if (parts.empty() || parts.size() > 3) throw ConfigError("bad feature spec '" + text + "'");

  FeatureConfig f;
  f.method = feature_method_from_string(parts[0]);
  if (f.method == FeatureMethod::Sentiment) {
    f.top_k = 0;
    if (parts.size() > 1) f.sentiment_min_count = parse_number<std::size_t>(parts[1], "sentiment min count");
  } else if (parts.size() > 1) {
    f.top_k = parse_number<std::size_t>(parts[1], "top-k");
  }
  if (parts.size() > 2) f.weighting = weighting_from_string(parts[2]);
  return f;
}

std::vector<FeatureConfig> reference_feature_sets() {
  std::vector<FeatureConfig> out;
  for (const char* spec : {"tfidf:500", "tfidf:900", "infogain:200", "infogain:600", "infogain:900",
                           "infogain:1000", "sentiment:5"}) {
    out.push_back(parse_feature_spec(spec));
  }
  return out;
}

ConfigFile parse_config(std::istream& in, const std::string& source, const std::filesystem::path& base_dir) {
  ConfigFile file;
  auto& cfg = file.experiment;
  auto resolve = [&](const std::string& p) { return (base_dir / p).lexically_normal(); };

  std::string section;
  std::set<std::string> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(source, n, "unterminated section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section != "data" && section != "split" && section != "features" && section != "model" &&
          section != "sweep") {
        throw ParseError(source, n, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, n, "expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (section.empty()) throw ParseError(source, n, "key '" + key + "' outside any section");
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) throw ParseError(source, n, "duplicate key " + full);

    try {
      if (full == "data.reviews") cfg.data.reviews = resolve(value);
      else if (full == "data.format") cfg.data.format = review_format_from_string(value);
      else if (full == "data.lexicon") cfg.data.lexicon = resolve(value);
      else if (full == "data.lexicon_format") cfg.data.lexicon_format = lexicon_format_from_string(value);
      else if (full == "data.stopwords") cfg.data.stopwords = resolve(value);
      else if (full == "data.min_count") cfg.data.min_count = parse_number<std::size_t>(value, full);
      else if (full == "split.train_fraction") cfg.split.train_fraction = parse_number<double>(value, full);
      else if (full == "split.seed") cfg.split.seed = parse_number<std::uint64_t>(value, full);
      else if (full == "features.name") cfg.features.name = value;
      else if (full == "features.method") cfg.features.method = feature_method_from_string(value);
      else if (full == "features.top_k") cfg.features.top_k = parse_number<std::size_t>(value, full);
      else if (full == "features.weighting") cfg.features.weighting = weighting_from_string(value);
      else if (full == "features.sentiment_min_count") cfg.features.sentiment_min_count = parse_number<std::size_t>(value, full);
      else if (full == "features.paper_faithful") cfg.features.paper_faithful = parse_bool(value, full);
      else if (full == "model.kind") cfg.model.kind = model_kind_from_string(value);
      else if (full == "model.C") cfg.model.C = parse_number<double>(value, full);
      else if (full == "model.tol") cfg.model.tol = parse_number<double>(value, full);
      else if (full == "model.max_iter") cfg.model.max_iter = parse_number<std::size_t>(value, full);
      else if (full == "model.alpha") cfg.model.alpha = parse_number<double>(value, full);
      else if (full == "model.seed") cfg.model.seed = parse_number<std::uint64_t>(value, full);
      else if (full == "model.save") cfg.model.save = resolve(value);
      else if (full == "sweep.features") {
        for (const auto& item : split_list(value)) file.sweep.features.push_back(parse_feature_spec(item));
      } else if (full == "sweep.models") {
        for (const auto& item : split_list(value)) file.sweep.models.push_back(model_kind_from_string(item));
      } else {
        throw ConfigError("unknown key " + full);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, n, e.what());
    }
  }
  return file;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return parse_config(in, path.string(), path.parent_path());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate() const {
  auto require_file = [](const std::filesystem::path& p, const char* what) {
    if (!std::filesystem::is_regular_file(p)) {
      throw ConfigError(std::string(what) + " file '" + p.string() + "' does not exist");
    }
  };
  if (data.reviews.empty()) throw ConfigError("[data] reviews is required");
  require_file(data.reviews, "reviews");
  if (data.stopwords) require_file(*data.stopwords, "stopwords");
  if (features.method == FeatureMethod::Sentiment) {
    if (!data.lexicon) throw ConfigError("sentiment features need [data] lexicon");
    require_file(*data.lexicon, "lexicon");
  } else if (data.lexicon) {
    require_file(*data.lexicon, "lexicon");
  }
  if (data.min_count < 1) throw ConfigError("[data] min_count must be >= 1");
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError("[split] train_fraction must lie strictly between 0 and 1");
  }
  if (features.method != FeatureMethod::Sentiment && features.top_k < 1) {
    throw ConfigError("[features] top_k must be >= 1");
  }
  if (features.sentiment_min_count < 1) throw ConfigError("[features] sentiment_min_count must be >= 1");
  if (!(model.C > 0.0)) throw ConfigError("[model] C must be > 0");
  if (!(model.tol > 0.0)) throw ConfigError("[model] tol must be > 0");
  if (model.max_iter < 1) throw ConfigError("[model] max_iter must be >= 1");
  if (!(model.alpha > 0.0)) throw ConfigError("[model] alpha must be > 0");
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "[data]\n";
  out << "reviews = " << data.reviews.string() << '\n';
  if (data.format) out << "format = " << (*data.format == ReviewFormat::Csv ? "csv" : "jsonl") << '\n';
  if (data.lexicon) out << "lexicon = " << data.lexicon->string() << '\n';
  if (data.lexicon_format) out << "lexicon_format = " << (*data.lexicon_format == LexiconFormat::Tsv ? "tsv" : "tff") << '\n';
  if (data.stopwords) out << "stopwords = " << data.stopwords->string() << '\n';
  out << "min_count = " << data.min_count << '\n';
  out << "\n[split]\n";
  out << "train_fraction = " << fmt_double(split.train_fraction) << '\n';
  out << "seed = " << split.seed << '\n';
  out << "\n[features]\n";
  if (!features.name.empty()) out << "name = " << features.name << '\n';
  out << "method = " << to_string(features.method) << '\n';
  out << "top_k = " << features.top_k << '\n';
  out << "weighting = " << to_string(features.effective_weighting()) << '\n';
  out << "sentiment_min_count = " << features.sentiment_min_count << '\n';
  out << "paper_faithful = " << (features.paper_faithful ? "true" : "false") << '\n';
  out << "\n[model]\n";
  out << "kind = " << to_string(model.kind) << '\n';
  out << "C = " << fmt_double(model.C) << '\n';
  out << "tol = " << fmt_double(model.tol) << '\n';
  out << "max_iter = " << model.max_iter << '\n';
  out << "alpha = " << fmt_double(model.alpha) << '\n';
  out << "seed = " << model.seed << '\n';
  if (model.save) out << "save = " << model.save->string() << '\n';
  return out.str();
}

void ExperimentConfig::override_seed(std::uint64_t seed) {
  split.seed = seed;
  model.seed = seed;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& base, const SweepSpec& spec) {
  if (spec.empty()) return {base};
  const std::vector<FeatureConfig> features = spec.features.empty() ? std::vector{base.features} : spec.features;
  const std::vector<ModelKind> models = spec.models.empty() ? std::vector{base.model.kind} : spec.models;
  std::vector<ExperimentConfig> out;
  for (const auto& f : features) {
    for (ModelKind m : models) {
      ExperimentConfig c = base;
      c.features = f;
      c.features.paper_faithful = base.features.paper_faithful;
      c.model.kind = m;
      c.model.save.reset();
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace rrp
