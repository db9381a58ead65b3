#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "interpsel/dataset.hpp"
#include "interpsel/perturbation.hpp"
#include "interpsel/solver.hpp"

namespace interpsel {

/// Weights and performance floor for the scalarized criterion.
struct MetricConfig {
  double omega1 = 1.0;  // interpretability weight
  double omega2 = 1.0;  // performance weight
  double kappa = 0.6;   // performance floor

  void validate() const;
};

/// Everything measured for one lambda candidate. replicate_mbms holds one
/// entry per replicate; a degenerate (all-zero) fit has no direction and is
/// stored as nullopt.
struct CandidateEvaluation {
  double lambda = 0.0;
  double delta = 0.0;  // 1 - expected prediction error
  double eta = 0.0;    // mean cosine to the reference map
  double zeta = 0.0;
  std::optional<Mbm> full_fit_mbm;
  std::vector<std::optional<Mbm>> replicate_mbms;
  int degenerate_replicates = 0;
};

/// a . b / (||a|| ||b||), clamped to [-1, 1] against rounding.
/// Throws DegenerateModelError if either vector is zero.
double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct InterpretabilityResult {
  double eta = 0.0;
  int degenerate_count = 0;
};

/// Mean cosine similarity between the replicate maps and the reference map.
/// Degenerate replicates (nullopt) are excluded from the mean and counted;
/// the value is reported raw and may be negative. Throws MetricError when
/// every replicate is degenerate.
InterpretabilityResult interpretability(
    std::span<const std::optional<Mbm>> replicate_mbms,
    const ReferenceSolution& reference);

/// delta = 1 - EPE, where EPE is the mean over replicates of the 0/1
/// misclassification rate of each replicate's model on its own out-of-bag
/// samples.
double performance(std::span<const ReplicateSet> replicates,
                   std::span<const WeightVector> fitted_models,
                   const Dataset& data);

/// zeta: 0 when delta < kappa, otherwise the omega-weighted mean of eta and
/// delta. A negative eta passes through the formula unmodified.
double scalarize(double eta, double delta, const MetricConfig& config);

/// True iff cosine(mbm, reference map) >= 1 - tol, i.e. the map is
/// positively proportional to the reference within tolerance.
bool is_strongly_interpretable(const Mbm& mbm,
                               const ReferenceSolution& reference, double tol);

/// Indices of candidates not dominated in the (eta, delta) plane. Candidate
/// a dominates b iff eta_a >= eta_b and delta_a >= delta_b with at least one
/// strict inequality.
std::vector<int> pareto_front(std::span<const CandidateEvaluation> candidates);

}  // namespace interpsel
