#include "rrp/persist.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <vector>

namespace rrp {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::Svm ? "svm" : "nb"; }

std::string_view display_name(ModelKind kind) { return kind == ModelKind::Svm ? "SVM" : "NB"; }

ModelKind model_kind_from_string(std::string_view text) {
  if (text == "svm") return ModelKind::Svm;
  if (text == "nb") return ModelKind::Nb;
  throw ConfigError("unknown model kind '" + std::string(text) + "' (expected svm or nb)");
}

ModelKind Classifier::kind() const {
  return std::holds_alternative<SVMModel>(model) ? ModelKind::Svm : ModelKind::Nb;
}

Prediction Classifier::predict(const FeatureVector& v) const {
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SVMModel>) return predict_svm(m, v);
        else return predict_nb(m, v);
      },
      model);
}

Prediction Classifier::predict(const TokenizedDoc& doc) const { return predict(vectorize(doc, features)); }

std::string hex_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  if (ec != std::errc{}) throw InvariantError("cannot format double");
  return std::string(buf, end);
}

double parse_hex_double(std::string_view text) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v, std::chars_format::hex);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw DataError("malformed hex float '" + std::string(text) + "'");
  }
  return v;
}

namespace {

constexpr std::string_view kMagic = "rrp-model";

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string crc_hex(std::uint32_t crc) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc);
  return buf;
}

void write_body(std::ostream& out, const Classifier& c) {
  out << kMagic << ' ' << kModelFormatVersion << '\n';
  out << "kind " << to_string(c.kind()) << '\n';
  out << "weighting " << to_string(c.features.weighting()) << '\n';
  for (const auto& [k, v] : c.training_config) {
    if (k.find_first_of(" \t\n") != std::string::npos || v.find('\n') != std::string::npos) {
      throw InvariantError("config entry '" + k + "' cannot be stored in a model file");
    }
    out << "config " << k << ' ' << v << '\n';
  }
  const auto& terms = c.features.terms();
  out << "features " << terms.size() << '\n';
  for (const auto& t : terms) {
    if (t.empty() || t.find_first_of(" \t\n") != std::string::npos) {
      throw InvariantError("feature term '" + t + "' cannot be stored in a model file");
    }
    out << "f " << t << '\n';
  }
  if (const auto& idf = c.features.idf()) {
    out << "idf " << idf->size() << '\n';
    for (double v : *idf) out << "v " << hex_double(v) << '\n';
  }

  if (const auto* svm = std::get_if<SVMModel>(&c.model)) {
    out << "svm.C " << hex_double(svm->C) << '\n';
    out << "svm.iterations " << svm->iterations << '\n';
    out << "svm.final_violation " << hex_double(svm->final_violation) << '\n';
    out << "svm.dual_objective " << hex_double(svm->dual_objective) << '\n';
    out << "svm.converged " << (svm->converged ? 1 : 0) << '\n';
    out << "svm.weights " << svm->weights.size() << '\n';
    for (Eigen::Index i = 0; i < svm->weights.size(); ++i) out << "v " << hex_double(svm->weights[i]) << '\n';
  } else {
    const auto& nb = std::get<NBModel>(c.model);
    out << "nb.alpha " << hex_double(nb.alpha) << '\n';
    out << "nb.priors " << hex_double(nb.class_log_priors[kHighRow]) << ' '
        << hex_double(nb.class_log_priors[kLowRow]) << '\n';
    out << "nb.likelihoods " << nb.dimension() << '\n';
    for (Eigen::Index j = 0; j < nb.dimension(); ++j) {
      out << "v " << hex_double(nb.term_log_likelihoods(kHighRow, j)) << ' '
          << hex_double(nb.term_log_likelihoods(kLowRow, j)) << '\n';
    }
  }
  out << "end\n";
}

// Sequential reader over the checksummed body.
class LineReader {
 public:
  LineReader(std::string_view body, std::string source) : body_(body), source_(std::move(source)) {}

  std::string_view next() {
    if (pos_ >= body_.size()) throw ModelTruncatedError(source_ + ": unexpected end of model file");
    auto nl = body_.find('\n', pos_);
    auto line = body_.substr(pos_, nl - pos_);
    pos_ = nl == std::string_view::npos ? body_.size() : nl + 1;
    ++line_;
    return line;
  }

  std::string_view peek_key() const {
    auto nl = body_.find('\n', pos_);
    auto line = body_.substr(pos_, nl - pos_);
    return line.substr(0, line.find(' '));
  }

  // Returns the text after "key ".
  std::string_view expect(std::string_view key) {
    auto line = next();
    if (line.substr(0, key.size()) != key || (line.size() > key.size() && line[key.size()] != ' ') ) {
      fail("expected '" + std::string(key) + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string_view{};
  }

  std::size_t expect_count(std::string_view key) {
    auto text = expect(key);
    std::size_t n = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || end != text.data() + text.size()) fail("bad count");
    return n;
  }

  double expect_double(std::string_view key) {
    try {
      return parse_hex_double(expect(key));
    } catch (const DataError& e) {
      fail(e.what());
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, what); }

 private:
  std::string_view body_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const Classifier& c) {
  std::ostringstream body;
  write_body(body, c);
  const std::string text = body.str();
  out << text << "crc32 " << crc_hex(crc_of(text)) << '\n';
}

Classifier read_model(std::istream& in, const std::string& source) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  // Version first so a bumped version is reported as such, not as a bad checksum.
  const auto first_nl = text.find('\n');
  const std::string_view header = std::string_view(text).substr(0, first_nl);
  if (header.substr(0, kMagic.size() + 1) != std::string(kMagic) + " ") {
    if (text.empty()) throw ModelTruncatedError(source + ": empty model file");
    throw DataError(source + ": not a model file");
  }
  if (header.substr(kMagic.size() + 1) != std::to_string(kModelFormatVersion)) {
    throw ModelVersionError(source + ": unsupported model format version '" +
                            std::string(header.substr(kMagic.size() + 1)) + "' (expected " +
                            std::to_string(kModelFormatVersion) + ")");
  }

  const auto crc_pos = text.rfind("\ncrc32 ");
  const auto end_pos = text.rfind("\nend\n");
  if (crc_pos == std::string::npos || end_pos == std::string::npos || end_pos + 4 != crc_pos ||
      text.back() != '\n') {
    throw ModelTruncatedError(source + ": model file is truncated");
  }
  const std::string_view body = std::string_view(text).substr(0, crc_pos + 1);
  std::string_view stored = std::string_view(text).substr(crc_pos + 7);
  stored.remove_suffix(1);
  if (stored != crc_hex(crc_of(body))) {
    throw ModelChecksumError(source + ": checksum mismatch (stored " + std::string(stored) + ", computed " +
                             crc_hex(crc_of(body)) + ")");
  }

  LineReader r(body, source);
  r.next();  // header
  const ModelKind kind = model_kind_from_string(r.expect("kind"));
  const Weighting weighting = weighting_from_string(r.expect("weighting"));

  Classifier c;
  while (r.peek_key() == "config") {
    auto rest = r.expect("config");
    auto sp = rest.find(' ');
    if (sp == std::string_view::npos) r.fail("config entry without value");
    c.training_config.emplace(std::string(rest.substr(0, sp)), std::string(rest.substr(sp + 1)));
  }

  std::vector<std::string> terms(r.expect_count("features"));
  for (auto& t : terms) t = std::string(r.expect("f"));
  std::optional<std::vector<double>> idf;
  if (r.peek_key() == "idf") {
    idf.emplace(r.expect_count("idf"));
    for (auto& v : *idf) v = r.expect_double("v");
  }
  c.features = FeatureSpace(std::move(terms), weighting, std::move(idf));
  const auto dim = c.features.dimension();

  if (kind == ModelKind::Svm) {
    SVMModel m;
    m.C = r.expect_double("svm.C");
    m.iterations = r.expect_count("svm.iterations");
    m.final_violation = r.expect_double("svm.final_violation");
    m.dual_objective = r.expect_double("svm.dual_objective");
    m.converged = r.expect_count("svm.converged") != 0;
    const auto n = r.expect_count("svm.weights");
    if (static_cast<Eigen::Index>(n) != dim + 1) r.fail("weight count does not match feature count");
    m.weights.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.weights.size(); ++i) m.weights[i] = r.expect_double("v");
    c.model = std::move(m);
  } else {
    NBModel m;
    m.alpha = r.expect_double("nb.alpha");
    auto priors = r.expect("nb.priors");
    auto sp = priors.find(' ');
    if (sp == std::string_view::npos) r.fail("expected two priors");
    m.class_log_priors[kHighRow] = parse_hex_double(priors.substr(0, sp));
    m.class_log_priors[kLowRow] = parse_hex_double(priors.substr(sp + 1));
    const auto n = r.expect_count("nb.likelihoods");
    if (static_cast<Eigen::Index>(n) != dim) r.fail("likelihood count does not match feature count");
    m.term_log_likelihoods.resize(2, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      auto pair = r.expect("v");
      auto space = pair.find(' ');
      if (space == std::string_view::npos) r.fail("expected two log-likelihoods");
      m.term_log_likelihoods(kHighRow, j) = parse_hex_double(pair.substr(0, space));
      m.term_log_likelihoods(kLowRow, j) = parse_hex_double(pair.substr(space + 1));
    }
    c.model = std::move(m);
  }
  r.expect("end");
  return c;
}

void save_model(const Classifier& c, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file '" + path.string() + "'");
  write_model(out, c);
  if (!out) throw DataError("error while writing model file '" + path.string() + "'");
}

Classifier load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path.string() + "'");
  return read_model(in, path.string());
}

}  // namespace rrp
