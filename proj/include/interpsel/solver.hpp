#pragma once

#include <Eigen/Dense>

#include "interpsel/dataset.hpp"

namespace interpsel {

/// Settings for one L1-penalized least-squares fit,
///
///   minimize ||X theta (+ intercept) - y||_2^2 + lambda * ||theta||_1.
///
/// The loss is the plain sum of squares (no 1/n factor) and there is no
/// intercept unless fit_intercept is set; the intercept, when enabled, is
/// never penalized.
struct LassoSpec {
  double lambda = 0.0;
  int max_iter = 10000;
  /// Convergence threshold on the largest per-coordinate change in a sweep.
  double tol = 1e-8;
  bool fit_intercept = false;
  /// Throw if the objective ever increases between sweeps (test mode).
  bool check_objective = false;

  void validate() const;
};

/// Raw coefficients from a fit.
struct WeightVector {
  Eigen::VectorXd theta;
  double intercept = 0.0;
  bool converged = false;
  int iterations = 0;  // completed sweeps
};

/// Unit-norm direction of a weight vector.
struct Mbm {
  Eigen::VectorXd direction;
};

/// Cyclic coordinate descent with exact per-coordinate soft-threshold
/// updates, coordinates visited in fixed ascending order. A sweep converges
/// once the largest coordinate change drops below tol and the first-order
/// optimality residual (see kkt_violation) is within 10 * tol; hitting
/// max_iter instead returns converged = false. When ||2 X^T y||_inf <=
/// lambda the all-zero solution is returned exactly.
WeightVector fit_lasso(const Dataset& data, const LassoSpec& spec);

/// Same, warm-started from an initial coefficient vector.
WeightVector fit_lasso(const Dataset& data, const LassoSpec& spec,
                       const Eigen::VectorXd& warm_start);

/// theta / ||theta||_2. Throws DegenerateModelError on a zero vector.
Mbm normalize(const WeightVector& weights);

/// sign(x . theta + intercept) per row; an exact zero maps to +1.
Eigen::VectorXd predict(const WeightVector& weights, const Eigen::MatrixXd& X);

/// Largest violation of the subgradient optimality conditions: for
/// theta_j != 0, |2 x_j^T r + lambda sign(theta_j)|; for theta_j == 0, the
/// excess of |2 x_j^T r| over lambda (r = X theta + intercept - y).
double kkt_violation(const Dataset& data, const LassoSpec& spec,
                     const WeightVector& weights);

/// ||X theta + intercept - y||_2^2 + lambda ||theta||_1.
double lasso_objective(const Dataset& data, const LassoSpec& spec,
                       const WeightVector& weights);

}  // namespace interpsel
