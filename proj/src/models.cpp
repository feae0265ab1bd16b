#include "rrp/models.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rrp/errors.hpp"
#include "rrp/random.hpp"

namespace rrp {

namespace {

Eigen::Index common_dimension(std::span<const FeatureVector> vectors) {
  if (vectors.empty()) throw DataError("training set is empty");
  const Eigen::Index dim = vectors.front().values.size();
  for (const auto& v : vectors) {
    if (v.values.size() != dim) throw DataError("training vectors differ in dimension");
    if (!v.label) throw DataError("training vector without a label");
  }
  return dim;
}

void require_both_classes(std::span<const FeatureVector> vectors) {
  bool high = false, low = false;
  for (const auto& v : vectors) (*v.label == Label::High ? high : low) = true;
  if (!high || !low) throw DataError("training needs examples of both High and Low");
}

void check_dimension(Eigen::Index expected, const FeatureVector& v) {
  if (v.values.size() != expected) {
    throw DataError("vector dimension " + std::to_string(v.values.size()) + " does not match model dimension " +
                    std::to_string(expected));
  }
}

}  // namespace

NBModel train_nb(std::span<const FeatureVector> vectors, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("naive Bayes alpha must be > 0");
  const Eigen::Index dim = common_dimension(vectors);
  require_both_classes(vectors);

  Eigen::Matrix<double, 2, Eigen::Dynamic> counts = Eigen::Matrix<double, 2, Eigen::Dynamic>::Zero(2, dim);
  Eigen::Vector2d docs = Eigen::Vector2d::Zero();
  for (const auto& v : vectors) {
    const Eigen::Index row = *v.label == Label::High ? kHighRow : kLowRow;
    docs[row] += 1.0;
    for (Eigen::SparseVector<double>::InnerIterator it(v.values); it; ++it) {
      if (!(it.value() >= 0.0) || !std::isfinite(it.value())) {
        throw DataError("naive Bayes needs finite nonnegative feature values");
      }
      counts(row, it.index()) += it.value();
    }
  }

  NBModel model;
  model.alpha = alpha;
  model.class_log_priors = (docs / docs.sum()).array().log();
  model.term_log_likelihoods.resize(2, dim);
  for (Eigen::Index row : {kHighRow, kLowRow}) {
    const double denom = counts.row(row).sum() + alpha * static_cast<double>(dim);
    model.term_log_likelihoods.row(row) = ((counts.row(row).array() + alpha) / denom).log();
  }
  return model;
}

Prediction predict_nb(const NBModel& model, const FeatureVector& vector) {
  check_dimension(model.dimension(), vector);
  double high = model.class_log_priors[kHighRow];
  double low = model.class_log_priors[kLowRow];
  for (Eigen::SparseVector<double>::InnerIterator it(vector.values); it; ++it) {
    high += it.value() * model.term_log_likelihoods(kHighRow, it.index());
    low += it.value() * model.term_log_likelihoods(kLowRow, it.index());
  }
  const double score = high - low;
  return {label_for_score(score), score};
}

namespace {

using RowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Rows are the inputs with a trailing constant-1 column.
RowMatrix augmented_design(std::span<const FeatureVector> vectors, Eigen::Index dim) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (Eigen::SparseVector<double>::InnerIterator it(vectors[i].values); it; ++it) {
      if (!std::isfinite(it.value())) throw DataError("SVM input contains a non-finite value");
      triplets.emplace_back(row, it.index(), it.value());
    }
    triplets.emplace_back(row, dim, 1.0);
  }
  RowMatrix x(static_cast<Eigen::Index>(vectors.size()), dim + 1);
  x.setFromTriplets(triplets.begin(), triplets.end());
  return x;
}

double row_dot(const RowMatrix& x, Eigen::Index i, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (RowMatrix::InnerIterator it(x, i); it; ++it) s += it.value() * w[it.index()];
  return s;
}

double projected_gradient(double g, double alpha, double c) {
  if (alpha <= 0.0) return std::min(g, 0.0);
  if (alpha >= c) return std::max(g, 0.0);
  return g;
}

}  // namespace

SVMModel train_svm(std::span<const FeatureVector> vectors, const SvmParams& params, SvmTrace* trace) {
  if (!(params.C > 0.0) || !std::isfinite(params.C)) throw ConfigError("SVM C must be > 0");
  if (!(params.tol > 0.0)) throw ConfigError("SVM tol must be > 0");
  if (params.max_iter < 1) throw ConfigError("SVM max_iter must be >= 1");
  const Eigen::Index dim = common_dimension(vectors);
  require_both_classes(vectors);

  const RowMatrix x = augmented_design(vectors, dim);
  const auto n = static_cast<Eigen::Index>(vectors.size());
  const double c = params.C;

  Eigen::VectorXd y(n);
  Eigen::VectorXd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = *vectors[static_cast<std::size_t>(i)].label == Label::High ? 1.0 : -1.0;
    diag[i] = x.row(i).squaredNorm();
  }

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim + 1);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(params.seed);

  auto dual_objective = [&] { return alpha.sum() - 0.5 * w.squaredNorm(); };
  auto max_violation = [&] {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = y[i] * row_dot(x, i, w) - 1.0;
      worst = std::max(worst, std::abs(projected_gradient(g, alpha[i], c)));
    }
    return worst;
  };

  SVMModel model;
  model.C = c;
  if (trace) trace->dual_objective_per_pass.clear();

  double previous = 0.0;
  while (model.iterations < params.max_iter) {
    rng.shuffle(std::span(order));
    double pass_violation = 0.0;
    for (Eigen::Index i : order) {
      const double g = y[i] * row_dot(x, i, w) - 1.0;
      const double pg = projected_gradient(g, alpha[i], c);
      pass_violation = std::max(pass_violation, std::abs(pg));
      if (std::abs(pg) > 1e-14) {
        const double old = alpha[i];
        alpha[i] = std::clamp(old - g / diag[i], 0.0, c);
        const double step = (alpha[i] - old) * y[i];
        for (RowMatrix::InnerIterator it(x, i); it; ++it) w[it.index()] += step * it.value();
      }
    }
    ++model.iterations;
    const double objective = dual_objective();
    if (objective < previous - 1e-9 * std::max(1.0, std::abs(previous))) {
      throw InvariantError("SVM dual objective decreased in pass " + std::to_string(model.iterations));
    }
    previous = objective;
    if (trace) trace->dual_objective_per_pass.push_back(objective);
    // The in-pass maximum mixes gradients from different iterates; confirm
    // against the final w before stopping.
    if (pass_violation < params.tol && max_violation() < params.tol) {
      model.converged = true;
      break;
    }
  }

  model.weights = w;
  model.final_violation = max_violation();
  model.dual_objective = dual_objective();
  if (!w.allFinite()) throw InvariantError("SVM training produced non-finite weights");

  if (trace) {
    trace->alpha = alpha;
    trace->margins.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) trace->margins[i] = y[i] * row_dot(x, i, w);
  }
  return model;
}

Prediction predict_svm(const SVMModel& model, const FeatureVector& vector) {
  check_dimension(model.dimension(), vector);
  double score = model.bias();
  for (Eigen::SparseVector<double>::InnerIterator it(vector.values); it; ++it) {
    score += it.value() * model.weights[it.index()];
  }
  return {label_for_score(score), score};
}

}  // namespace rrp
