#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rrp/featsel.hpp"
#include "rrp/textprep.hpp"

namespace testing {

inline rrp::FeatureVector dense(std::initializer_list<double> values, std::optional<rrp::Label> label = {}) {
  rrp::FeatureVector v;
  v.label = label;
  v.values.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) {
    if (x != 0.0) v.values.insert(i) = x;
    ++i;
  }
  return v;
}

inline rrp::FeatureVector dense(const std::vector<double>& values, std::optional<rrp::Label> label = {}) {
  rrp::FeatureVector v;
  v.label = label;
  v.values.resize(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) v.values.insert(static_cast<Eigen::Index>(i)) = values[i];
  }
  return v;
}

inline rrp::TokenizedDoc doc(std::string id, rrp::Label label, std::vector<std::string> tokens) {
  return {std::move(id), label, std::move(tokens)};
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("rrp-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing
