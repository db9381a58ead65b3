#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "interpsel/dataset.hpp"
#include "interpsel/errors.hpp"
#include "interpsel/solver.hpp"

using namespace interpsel;

namespace {

double soft(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Closed-form minimizer of ||X t - y||^2 + lambda |t|_1 for X^T X = I:
// the per-coordinate soft threshold at lambda / 2.
Eigen::VectorXd orthonormal_oracle(const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y, double lambda) {
  const Eigen::VectorXd correlation = X.transpose() * y;
  Eigen::VectorXd solution(correlation.size());
  for (Eigen::Index j = 0; j < correlation.size(); ++j)
    solution[j] = soft(correlation[j], lambda / 2.0);
  return solution;
}

Eigen::MatrixXd random_orthonormal(std::mt19937_64& engine, Eigen::Index rows,
                                   Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd raw(rows, cols);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = normal(engine);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  return Eigen::MatrixXd(qr.householderQ()) .leftCols(cols);
}

Eigen::VectorXd random_labels(std::mt19937_64& engine, Eigen::Index count) {
  Eigen::VectorXd labels(count);
  bool flip = false;
  for (Eigen::Index i = 0; i < count; ++i, flip = !flip)
    labels[i] = ((engine() & 1) != 0) == flip ? 1.0 : -1.0;
  // Ensure both classes appear.
  labels[0] = 1.0;
  labels[count - 1] = -1.0;
  return labels;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("orthonormal design solves by soft thresholding") {
  Dataset data;
  data.X = Eigen::MatrixXd::Identity(2, 2);
  data.y = Eigen::VectorXd{{3.0, 1.0}};

  SUBCASE("lambda = 1 shrinks both coordinates by half a lambda") {
    LassoSpec spec;
    spec.lambda = 1.0;
    const WeightVector fit = fit_lasso(data, spec);
    CHECK(fit.converged);
    CHECK(fit.theta[0] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit.theta[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("lambda at the all-zero threshold returns exact zeros") {
    LassoSpec spec;
    spec.lambda = 6.0;  // ||2 X^T y||_inf = 6
    const WeightVector fit = fit_lasso(data, spec);
    CHECK(fit.converged);
    CHECK(fit.theta[0] == 0.0);
    CHECK(fit.theta[1] == 0.0);
    CHECK(fit.iterations == 1);
  }
}

TEST_CASE("lambda = 0 reproduces the least-squares solution") {
  std::mt19937_64 engine(11);
  std::normal_distribution<double> normal;
  Dataset data;
  data.X.resize(40, 3);
  for (Eigen::Index i = 0; i < data.X.size(); ++i)
    data.X.data()[i] = normal(engine);
  data.y = random_labels(engine, 40);

  const Eigen::VectorXd direct =
      (data.X.transpose() * data.X)
          .ldlt()
          .solve(data.X.transpose() * data.y);
  const WeightVector fit = fit_lasso(data, LassoSpec{});
  CHECK(fit.converged);
  CHECK((fit.theta - direct).norm() <= 1e-6 * direct.norm());
}

TEST_CASE("toy full fit at lambda = 0 matches the population direction") {
  const Dataset data = generate_toy(ToyConfig::defaults());
  const WeightVector fit = fit_lasso(data, LassoSpec{});
  REQUIRE(fit.converged);
  const Mbm mbm = normalize(fit);
  CHECK(std::abs(mbm.direction[0] - 0.452) <= 0.03);
  CHECK(std::abs(mbm.direction[1] - 0.892) <= 0.03);
}

TEST_CASE("coordinate descent matches the closed form on orthonormal designs") {
  std::mt19937_64 engine(23);
  LassoSpec spec;
  for (int trial = 0; trial < 20; ++trial) {
    Dataset data;
    data.X = random_orthonormal(engine, 5, 3);
    data.y = random_labels(engine, 5);
    for (double lambda : {0.0, 0.3, 1.7}) {
      spec.lambda = lambda;
      const WeightVector fit = fit_lasso(data, spec);
      REQUIRE(fit.converged);
      const Eigen::VectorXd oracle = orthonormal_oracle(data.X, data.y, lambda);
      CHECK((fit.theta - oracle).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("objective is non-increasing across sweeps") {
  std::mt19937_64 engine(31);
  std::normal_distribution<double> normal;
  LassoSpec spec;
  spec.check_objective = true;  // fit throws if a sweep increases it
  for (int trial = 0; trial < 30; ++trial) {
    Dataset data;
    data.X.resize(20, 4);
    for (Eigen::Index i = 0; i < data.X.size(); ++i)
      data.X.data()[i] = normal(engine);
    data.X.col(3) = 0.9 * data.X.col(0) + 0.1 * data.X.col(3);  // correlated
    data.y = random_labels(engine, 20);
    spec.lambda = trial % 3 == 0 ? 0.0 : 2.5;
    const WeightVector fit = fit_lasso(data, spec);
    CHECK(fit.converged);
  }
}

TEST_CASE("L1 norm of the solution shrinks along the regularization path") {
  const Dataset data = generate_toy(ToyConfig::defaults());
  LassoSpec spec;
  double previous = std::numeric_limits<double>::infinity();
  for (double lambda :
       {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 50.0, 100.0, 250.0, 500.0, 1000.0}) {
    spec.lambda = lambda;
    const WeightVector fit = fit_lasso(data, spec);
    REQUIRE(fit.converged);
    const double l1 = fit.theta.lpNorm<1>();
    CHECK(l1 <= previous + 1e-9);
    previous = l1;
  }
}

TEST_CASE("first-order optimality holds at convergence on the toy grid") {
  const Dataset data = generate_toy(ToyConfig::defaults());
  LassoSpec spec;
  for (double lambda :
       {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 50.0, 100.0, 250.0, 500.0, 1000.0}) {
    spec.lambda = lambda;
    const WeightVector fit = fit_lasso(data, spec);
    REQUIRE(fit.converged);
    CHECK(kkt_violation(data, spec, fit) <= 10.0 * spec.tol);
  }
}

TEST_CASE("warm starts converge immediately at the solution") {
  const Dataset data = generate_toy(ToyConfig::defaults());
  LassoSpec spec;
  spec.lambda = 50.0;
  const WeightVector cold = fit_lasso(data, spec);
  REQUIRE(cold.converged);
  const WeightVector warm = fit_lasso(data, spec, cold.theta);
  CHECK(warm.converged);
  CHECK(warm.iterations == 1);
  CHECK((warm.theta - cold.theta).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("iteration budget exhaustion reports converged = false") {
  std::mt19937_64 engine(5);
  std::normal_distribution<double> normal;
  Dataset data;
  data.X.resize(20, 3);
  for (Eigen::Index i = 0; i < data.X.size(); ++i)
    data.X.data()[i] = normal(engine);
  data.X.col(1) = data.X.col(0) + 1e-4 * data.X.col(1);  // near-collinear
  data.y = random_labels(engine, 20);

  LassoSpec spec;
  spec.max_iter = 1;
  const WeightVector fit = fit_lasso(data, spec);
  CHECK_FALSE(fit.converged);
  CHECK(fit.iterations == 1);
}

TEST_CASE("normalize maps weights onto the unit sphere") {
  WeightVector weights;
  weights.theta = Eigen::VectorXd{{3.0, 4.0}};
  const Mbm mbm = normalize(weights);
  CHECK(mbm.direction[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(mbm.direction[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(mbm.direction.norm() - 1.0) <= 1e-12);

  weights.theta.setZero();
  CHECK_THROWS_AS(normalize(weights), DegenerateModelError);
}

TEST_CASE("predict uses the sign rule with ties mapped to +1") {
  WeightVector weights;
  weights.theta = Eigen::VectorXd{{1.0, 0.0}};

  Eigen::MatrixXd points{{1.5, 7.0}, {0.0, 3.0}, {-0.2, 100.0}};
  const Eigen::VectorXd labels = predict(weights, points);
  CHECK(labels[0] == 1.0);
  CHECK(labels[1] == 1.0);  // zero margin
  CHECK(labels[2] == -1.0);

  Eigen::MatrixXd wrong_width(2, 3);
  wrong_width.setZero();
  CHECK_THROWS_AS(predict(weights, wrong_width), InputError);
}

TEST_CASE("population direction scores near the optimal error rate") {
  ToyConfig config = ToyConfig::defaults();
  config.n_per_class = 50000;
  config.seed = 777;
  const Dataset data = generate_toy(config);

  WeightVector weights;
  weights.theta = Eigen::VectorXd{{1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0)}};
  const Eigen::VectorXd predicted = predict(weights, data.X);
  double correct = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i)
    if (predicted[i] == data.y[i]) correct += 1.0;
  const double accuracy = correct / static_cast<double>(data.n());

  // Independent oracle: the optimal accuracy of equal-prior Gaussian classes
  // is Phi(half the Mahalanobis distance between the means).
  const Eigen::VectorXd gap = config.class_offsets[0] - config.class_offsets[1];
  const double mahalanobis =
      std::sqrt(gap.dot(config.noise_covariance.ldlt().solve(gap)));
  const double optimal = normal_cdf(mahalanobis / 2.0);
  CHECK(optimal == doctest::Approx(0.9897).epsilon(1e-3));
  CHECK(std::abs(accuracy - optimal) <= 0.004);
  CHECK(std::abs(accuracy - 0.988) <= 0.005);
}

TEST_CASE("non-finite inputs are rejected") {
  Dataset data;
  data.X = Eigen::MatrixXd{{1.0, 0.0}, {0.0, 1.0}};
  data.y = Eigen::VectorXd{{1.0, -1.0}};
  data.X(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(fit_lasso(data, LassoSpec{}), InputError);
}

TEST_CASE("invalid solver settings are rejected") {
  const Dataset data = generate_toy(ToyConfig::defaults());
  LassoSpec spec;

  SUBCASE("negative lambda") {
    spec.lambda = -1.0;
    CHECK_THROWS_AS(fit_lasso(data, spec), ConfigError);
  }
  SUBCASE("zero tolerance") {
    spec.tol = 0.0;
    CHECK_THROWS_AS(fit_lasso(data, spec), ConfigError);
  }
  SUBCASE("bad warm start length") {
    CHECK_THROWS_AS(fit_lasso(data, spec, Eigen::VectorXd::Zero(5)),
                    InputError);
  }
}

TEST_CASE("optional unpenalized intercept recovers a shifted separator") {
  // One feature, classes split around x = 2 rather than the origin.
  Dataset data;
  data.X = Eigen::MatrixXd{{1.0}, {1.5}, {2.5}, {3.0}};
  data.y = Eigen::VectorXd{{-1.0, -1.0, 1.0, 1.0}};

  LassoSpec spec;
  spec.fit_intercept = true;
  const WeightVector fit = fit_lasso(data, spec);
  REQUIRE(fit.converged);

  // Direct least squares with an appended all-ones column.
  Eigen::MatrixXd augmented(4, 2);
  augmented.col(0) = data.X.col(0);
  augmented.col(1).setOnes();
  const Eigen::Vector2d direct =
      (augmented.transpose() * augmented)
          .ldlt()
          .solve(augmented.transpose() * data.y);
  CHECK(fit.theta[0] == doctest::Approx(direct[0]).epsilon(1e-8));
  CHECK(fit.intercept == doctest::Approx(direct[1]).epsilon(1e-8));

  const Eigen::VectorXd labels = predict(fit, data.X);
  CHECK((labels.array() == data.y.array()).all());
}

}  // TEST_SUITE
