#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rrp/corpus.hpp"
#include "rrp/featsel.hpp"

namespace rrp {

struct Prediction {
  Label label = Label::High;
  double score = 0.0;  // High when score >= 0
};

inline Label label_for_score(double score) { return score >= 0.0 ? Label::High : Label::Low; }

/// Row 0 = High, row 1 = Low.
inline constexpr Eigen::Index kHighRow = 0;
inline constexpr Eigen::Index kLowRow = 1;

/// Multinomial naive Bayes with additive smoothing.
struct NBModel {
  Eigen::Vector2d class_log_priors;
  Eigen::Matrix<double, 2, Eigen::Dynamic> term_log_likelihoods;
  double alpha = 1.0;

  Eigen::Index dimension() const { return term_log_likelihoods.cols(); }
};

/// P(t|c) = (count(t,c) + alpha) / (sum_t' count(t',c) + alpha |V|), priors by
/// class frequency. Vector values are taken as (possibly fractional) counts.
NBModel train_nb(std::span<const FeatureVector> vectors, double alpha = 1.0);

/// score = log-posterior gap High - Low.
Prediction predict_nb(const NBModel& model, const FeatureVector& vector);

struct SvmParams {
  double C = 1.0;
  double tol = 1e-4;
  std::size_t max_iter = 1000;
  std::uint64_t seed = 0;
};

/// Linear SVM; weights has one slot per feature plus a trailing bias slot
/// paired with a constant-1 input.
struct SVMModel {
  Eigen::VectorXd weights;
  double C = 1.0;

  // Training diagnostics.
  std::size_t iterations = 0;
  double final_violation = 0.0;
  double dual_objective = 0.0;
  bool converged = false;

  Eigen::Index dimension() const { return weights.size() - 1; }
  double bias() const { return weights[weights.size() - 1]; }
};

/// Optional record of the optimizer's path.
struct SvmTrace {
  std::vector<double> dual_objective_per_pass;
  Eigen::VectorXd alpha;
  Eigen::VectorXd margins;  // y_i * w . x_i at the returned solution
};

/// L2-regularized hinge-loss SVM solved by dual coordinate descent with
/// alpha_i in [0, C]. Stops once every coordinate's projected gradient is
/// below tol, or after max_iter passes (converged = false). Each pass visits
/// coordinates in a seeded random order.
SVMModel train_svm(std::span<const FeatureVector> vectors, const SvmParams& params = {},
                   SvmTrace* trace = nullptr);

/// score = w . [x, 1].
Prediction predict_svm(const SVMModel& model, const FeatureVector& vector);

}  // namespace rrp
