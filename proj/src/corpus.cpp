#include "rrp/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "rrp/errors.hpp"
#include "rrp/random.hpp"

namespace rrp {

std::string_view to_string(Label label) {
  return label == Label::High ? "High" : "Low";
}

Label label_from_string(std::string_view text) {
  if (text == "High" || text == "high") return Label::High;
  if (text == "Low" || text == "low") return Label::Low;
  throw DataError("unknown label '" + std::string(text) + "'");
}

std::size_t LabeledCorpus::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [label](const auto& it) { return it.label == label; }));
}

ReviewFormat review_format_from_string(std::string_view text) {
  if (text == "jsonl") return ReviewFormat::Jsonl;
  if (text == "csv") return ReviewFormat::Csv;
  throw ConfigError("unknown review format '" + std::string(text) + "' (expected jsonl or csv)");
}

ReviewFormat review_format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? ReviewFormat::Csv : ReviewFormat::Jsonl;
}

namespace {

void check_stars(long long stars, const std::string& source, std::size_t line) {
  if (stars < 1 || stars > 5) {
    throw ParseError(source, line, "field 'stars' = " + std::to_string(stars) + " outside 1..5");
  }
}

Review parse_json_record(const std::string& text, const std::string& source, std::size_t line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, line, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(source, line, "record is not a JSON object");

  auto string_field = [&](const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(source, line, std::string("missing field '") + name + "'");
    if (!it->is_string()) throw ParseError(source, line, std::string("field '") + name + "' is not a string");
    return it->get<std::string>();
  };

  Review r;
  r.review_id = string_field("review_id");
  r.movie = string_field("movie");
  auto stars = obj.find("stars");
  if (stars == obj.end()) throw ParseError(source, line, "missing field 'stars'");
  if (!stars->is_number_integer()) throw ParseError(source, line, "field 'stars' is not an integer");
  check_stars(stars->get<long long>(), source, line);
  r.stars = stars->get<int>();
  r.text = string_field("text");
  return r;
}

// One RFC-4180 record; may span physical lines when a quoted field holds a
// newline. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line,
                     const std::string& source) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  const std::size_t start_line = line + 1;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && in.peek() == '\n') {
      // swallowed; the '\n' ends the record
    } else if (c == '\n') {
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(source, start_line, "unterminated quoted field");
  if (!any) return false;
  ++line;
  fields.push_back(std::move(field));
  return true;
}

Corpus read_csv(std::istream& in, std::string source) {
  Corpus corpus;
  corpus.source = source;
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!read_csv_record(in, fields, line, source)) return corpus;

  const std::vector<std::string> expected{"review_id", "movie", "stars", "text"};
  if (fields != expected) throw ParseError(source, 1, "expected header review_id,movie,stars,text");

  std::size_t record_line = line + 1;
  while (read_csv_record(in, fields, line, source)) {
    if (fields.size() == 1 && fields[0].empty()) {  // blank line
      record_line = line + 1;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(source, record_line,
                       "expected 4 fields, found " + std::to_string(fields.size()));
    }
    Review r;
    r.review_id = fields[0];
    r.movie = fields[1];
    long long stars = 0;
    try {
      std::size_t used = 0;
      stars = std::stoll(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(source, record_line, "field 'stars' is not an integer: '" + fields[2] + "'");
    }
    check_stars(stars, source, record_line);
    r.stars = static_cast<int>(stars);
    r.text = fields[3];
    if (r.review_id.empty()) throw ParseError(source, record_line, "field 'review_id' is empty");
    corpus.reviews.push_back(std::move(r));
    record_line = line + 1;
  }
  return corpus;
}

Corpus read_jsonl(std::istream& in, std::string source) {
  Corpus corpus;
  corpus.source = source;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    corpus.reviews.push_back(parse_json_record(text, source, line));
  }
  return corpus;
}

}  // namespace

Corpus read_reviews(std::istream& in, ReviewFormat format, std::string source) {
  Corpus corpus = format == ReviewFormat::Csv ? read_csv(in, source) : read_jsonl(in, source);

  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < corpus.reviews.size(); ++i) {
    if (!seen.insert(corpus.reviews[i].review_id).second) {
      throw DataError(corpus.source + ": duplicate review_id '" + corpus.reviews[i].review_id +
                      "' (record " + std::to_string(i + 1) + ")");
    }
  }
  return corpus;
}

Corpus load_reviews(const std::filesystem::path& path, ReviewFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open review file '" + path.string() + "'");
  return read_reviews(in, format, path.string());
}

void write_reviews_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& r : corpus.reviews) {
    nlohmann::json obj{{"review_id", r.review_id}, {"movie", r.movie}, {"stars", r.stars}, {"text", r.text}};
    out << obj.dump() << '\n';
  }
}

LabeledCorpus label_binary(const Corpus& corpus) {
  LabeledCorpus out;
  out.items.reserve(corpus.reviews.size());
  for (const auto& r : corpus.reviews) {
    if (r.stars == 4) continue;
    out.items.push_back({r, r.stars == 5 ? Label::High : Label::Low});
  }
  return out;
}

Split split(const LabeledCorpus& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie strictly between 0 and 1");
  }

  std::vector<char> in_train(corpus.items.size(), 0);
  Rng rng(seed);
  for (Label label : {Label::High, Label::Low}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.items.size(); ++i) {
      if (corpus.items[i].label == label) members.push_back(i);
    }
    if (members.size() < 2) {
      throw DataError("cannot stratify: class " + std::string(to_string(label)) + " has " +
                      std::to_string(members.size()) + " item(s), need at least 2");
    }
    rng.shuffle(std::span(members));
    // The epsilon keeps exact products such as 0.29 * 100 from flooring to 28.
    const auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(members.size()) + 1e-9));
    for (std::size_t k = 0; k < n_train; ++k) in_train[members[k]] = 1;
  }

  Split s;
  s.seed = seed;
  s.train_fraction = train_fraction;
  for (std::size_t i = 0; i < corpus.items.size(); ++i) {
    (in_train[i] ? s.train : s.test).items.push_back(corpus.items[i]);
  }
  return s;
}

std::size_t MovieSummary::total() const {
  std::size_t n = 0;
  for (auto c : by_stars) n += c;
  return n;
}

std::vector<MovieSummary> summarize(const Corpus& corpus) {
  std::vector<MovieSummary> rows;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : corpus.reviews) {
    auto [it, inserted] = index.try_emplace(r.movie, rows.size());
    if (inserted) rows.push_back({r.movie, {}});
    rows[it->second].by_stars[static_cast<std::size_t>(r.stars - 1)]++;
  }
  return rows;
}

void write_summary_tsv(std::ostream& out, const std::vector<MovieSummary>& rows) {
  out << "movie\treviews\t5_star\t4_star\t3_star\t2_star\t1_star\n";
  for (const auto& row : rows) {
    out << row.movie << '\t' << row.total();
    for (int s = 5; s >= 1; --s) out << '\t' << row.stars(s);
    out << '\n';
  }
}

std::uint32_t membership_digest(const Split& s) {
  uLong crc = crc32(0L, Z_NULL, 0);
  auto feed = [&crc](std::string_view bytes) {
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  };
  feed("train\n");
  for (const auto& it : s.train.items) {
    feed(it.review.review_id);
    feed("\n");
  }
  feed("test\n");
  for (const auto& it : s.test.items) {
    feed(it.review.review_id);
    feed("\n");
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace rrp
