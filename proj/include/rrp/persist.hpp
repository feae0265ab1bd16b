#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "rrp/errors.hpp"
#include "rrp/featsel.hpp"
#include "rrp/models.hpp"

namespace rrp {

enum class ModelKind { Svm, Nb };

std::string_view to_string(ModelKind kind);
/// "SVM" / "NB", used as report column names.
std::string_view display_name(ModelKind kind);
ModelKind model_kind_from_string(std::string_view text);

/// A trained model together with the feature space it was trained over.
struct Classifier {
  FeatureSpace features;
  std::variant<SVMModel, NBModel> model;
  /// Free-form key/value echo of the training configuration.
  std::map<std::string, std::string> training_config;

  ModelKind kind() const;
  Prediction predict(const FeatureVector& v) const;
  Prediction predict(const TokenizedDoc& doc) const;
};

inline constexpr int kModelFormatVersion = 1;

class ModelVersionError : public DataError {
 public:
  using DataError::DataError;
};

class ModelChecksumError : public DataError {
 public:
  using DataError::DataError;
};

class ModelTruncatedError : public DataError {
 public:
  using DataError::DataError;
};

/// Line-oriented text; reals are hex floats so loading is bit-exact. The
/// last line is a CRC-32 over every preceding byte.
void write_model(std::ostream& out, const Classifier& c);
Classifier read_model(std::istream& in, const std::string& source = "<stream>");

void save_model(const Classifier& c, const std::filesystem::path& path);
Classifier load_model(const std::filesystem::path& path);

/// Exact text form of a double (hex float) and its inverse.
std::string hex_double(double v);
double parse_hex_double(std::string_view text);

}  // namespace rrp
