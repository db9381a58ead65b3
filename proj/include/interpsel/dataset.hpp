#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>

namespace interpsel {

/// Design matrix of n samples by p features with labels in {-1, +1}.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }

  /// Throws InputError unless n >= 2, p >= 1, X and y are finite, sizes
  /// agree and every label is exactly -1 or +1.
  void validate() const;
};

/// Two-class Gaussian generator: each sample is its class mean plus
/// correlated noise drawn from a shared covariance.
struct ToyConfig {
  int n_per_class = 500;
  /// class_offsets[0] is the mean of the +1 class, class_offsets[1] of -1.
  std::array<Eigen::VectorXd, 2> class_offsets;
  Eigen::MatrixXd noise_covariance;
  std::uint64_t seed = 2;

  /// The 2-D setup used throughout the tests: offsets [+1.5, 0] / [-1.5, 0],
  /// covariance [[1.02, -0.3], [-0.3, 0.15]], 500 samples per class.
  static ToyConfig defaults();

  void validate() const;
};

/// Closed-form least-squares direction of a dataset and its unit-norm map.
struct ReferenceSolution {
  Eigen::VectorXd theta_star;
  Eigen::VectorXd mbm_star;  // theta_star / ||theta_star||_2
};

/// Draws 2 * n_per_class samples, class-interleaved (+1, -1, +1, ...),
/// deterministic for a fixed (config, seed). Noise is sampled through an
/// eigen factor of the covariance, so positive semi-definite (including
/// singular) covariances are accepted.
Dataset generate_toy(const ToyConfig& config);

/// theta_star = pinv(Sigma_X) * X^T y, where Sigma_X is the mean-centered
/// sample covariance of X with 1/n normalization. The pseudo-inverse
/// truncates eigenvalues below 1e-10 times the largest, which covers
/// rank-deficient designs. Throws DegenerateReferenceError when X^T y (and
/// hence theta_star) carries no class signal. Accepts real-valued labels;
/// the map is invariant under positive scaling of y.
ReferenceSolution reference_solution(const Dataset& data);

/// CSV with header `x1,...,xp,y`. Values round-trip save -> load exactly.
Dataset load_csv(const std::filesystem::path& path);
void save_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace interpsel
