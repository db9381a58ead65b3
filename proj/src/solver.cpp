#include "interpsel/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "interpsel/errors.hpp"

namespace interpsel {

void LassoSpec::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError("lambda must be a finite nonnegative value");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be positive");
}

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Subgradient optimality residual from the precomputed gradient of the
// squared loss, g = 2 X^T (X theta + b - y).
double kkt_from_gradient(const Eigen::VectorXd& gradient,
                         const Eigen::VectorXd& theta, double lambda) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double violation =
        theta[j] != 0.0
            ? std::abs(gradient[j] + lambda * (theta[j] > 0.0 ? 1.0 : -1.0))
            : std::max(0.0, std::abs(gradient[j]) - lambda);
    worst = std::max(worst, violation);
  }
  return worst;
}

WeightVector fit_impl(const Dataset& data, const LassoSpec& spec,
                      Eigen::VectorXd theta) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();

  // Gram form: all sweeps run on p x p quantities.
  const Eigen::MatrixXd gram = data.X.transpose() * data.X;
  const Eigen::VectorXd corr = data.X.transpose() * data.y;
  const Eigen::VectorXd col_sums = data.X.colwise().sum();
  const double y_sum = data.y.sum();
  const double half_lambda = 0.5 * spec.lambda;

  WeightVector fit;
  fit.theta = std::move(theta);
  Eigen::VectorXd gram_theta = gram * fit.theta;

  double previous_objective = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < spec.max_iter; ++sweep) {
    double max_delta = 0.0;

    if (spec.fit_intercept) {
      const double intercept =
          (y_sum - col_sums.dot(fit.theta)) / static_cast<double>(n);
      max_delta = std::abs(intercept - fit.intercept);
      fit.intercept = intercept;
    }

    for (Eigen::Index j = 0; j < p; ++j) {
      const double old = fit.theta[j];
      const double gram_jj = gram(j, j);
      double updated = 0.0;
      if (gram_jj > 0.0) {
        const double rho = corr[j] - (gram_theta[j] - gram_jj * old) -
                           fit.intercept * col_sums[j];
        updated = soft_threshold(rho, half_lambda) / gram_jj;
      }
      if (updated != old) {
        gram_theta += gram.col(j) * (updated - old);
        fit.theta[j] = updated;
      }
      max_delta = std::max(max_delta, std::abs(updated - old));
    }
    fit.iterations = sweep + 1;

    if (spec.check_objective) {
      const double objective = lasso_objective(data, spec, fit);
      if (objective >
          previous_objective + 1e-9 * (1.0 + std::abs(previous_objective)))
        throw Error("coordinate descent objective increased from " +
                    std::to_string(previous_objective) + " to " +
                    std::to_string(objective));
      previous_objective = objective;
    }

    if (max_delta < spec.tol) {
      // Recompute the gradient from scratch so accumulated drift in
      // gram_theta cannot distort the optimality check.
      gram_theta = gram * fit.theta;
      const Eigen::VectorXd gradient =
          2.0 * (gram_theta - corr + fit.intercept * col_sums);
      if (kkt_from_gradient(gradient, fit.theta, spec.lambda) <=
          10.0 * spec.tol) {
        fit.converged = true;
        break;
      }
    }
  }
  return fit;
}

}  // namespace

WeightVector fit_lasso(const Dataset& data, const LassoSpec& spec) {
  data.validate();
  spec.validate();
  return fit_impl(data, spec, Eigen::VectorXd::Zero(data.p()));
}

WeightVector fit_lasso(const Dataset& data, const LassoSpec& spec,
                       const Eigen::VectorXd& warm_start) {
  data.validate();
  spec.validate();
  if (warm_start.size() != data.p())
    throw InputError("warm start length does not match feature count");
  if (!warm_start.allFinite())
    throw InputError("warm start contains non-finite values");
  return fit_impl(data, spec, warm_start);
}

Mbm normalize(const WeightVector& weights) {
  if (!weights.theta.allFinite())
    throw InputError("weight vector contains non-finite values");
  const double norm = weights.theta.norm();
  if (norm == 0.0)
    throw DegenerateModelError(
        "weight vector is zero; its direction is undefined");
  return Mbm{weights.theta / norm};
}

Eigen::VectorXd predict(const WeightVector& weights,
                        const Eigen::MatrixXd& X) {
  if (X.cols() != weights.theta.size())
    throw InputError("feature count does not match the fitted model");
  if (!X.allFinite()) throw InputError("inputs contain non-finite values");
  const Eigen::VectorXd scores =
      (X * weights.theta).array() + weights.intercept;
  Eigen::VectorXd labels(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i)
    labels[i] = scores[i] >= 0.0 ? 1.0 : -1.0;
  return labels;
}

double kkt_violation(const Dataset& data, const LassoSpec& spec,
                     const WeightVector& weights) {
  if (weights.theta.size() != data.p())
    throw InputError("weight vector length does not match feature count");
  const Eigen::VectorXd residual =
      (data.X * weights.theta).array() + weights.intercept - data.y.array();
  const Eigen::VectorXd gradient = 2.0 * (data.X.transpose() * residual);
  return kkt_from_gradient(gradient, weights.theta, spec.lambda);
}

double lasso_objective(const Dataset& data, const LassoSpec& spec,
                       const WeightVector& weights) {
  if (weights.theta.size() != data.p())
    throw InputError("weight vector length does not match feature count");
  const double loss = ((data.X * weights.theta).array() + weights.intercept -
                       data.y.array())
                          .matrix()
                          .squaredNorm();
  return loss + spec.lambda * weights.theta.lpNorm<1>();
}

}  // namespace interpsel
