#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "interpsel/dataset.hpp"
#include "interpsel/metrics.hpp"
#include "interpsel/perturbation.hpp"
#include "interpsel/solver.hpp"

namespace interpsel {

/// Hyper-parameter grid search settings. The solver spec's lambda field is
/// overridden per candidate.
struct GridSpec {
  std::vector<double> lambdas;  // strictly ascending, all >= 0
  PerturbationPlan plan;
  MetricConfig metric;
  LassoSpec solver;

  void validate() const;

  /// The default grid {0, 0.001, 0.01, 0.1, 1, 10, 50, 100, 250, 500, 1000}
  /// with m = 50 replicates, omega1 = omega2 = 1 and kappa = 0.6.
  static GridSpec defaults(std::uint64_t master_seed);
};

struct SelectionReport {
  std::vector<CandidateEvaluation> candidates;  // ordered by lambda
  double selected_lambda = 0.0;
  int selected_index = -1;
  std::vector<int> pareto_indices;  // ascending
  /// Set when several candidates share the maximal zeta within 1e-9.
  std::optional<std::string> tie_note;
};

/// Tolerance under which two zeta values count as tied.
inline constexpr double kZetaTieTolerance = 1e-9;

/// Fits one model per replicate (on its in-bag samples) plus one full-data
/// fit, and assembles delta, eta, zeta and the maps for one lambda.
/// Deterministic given (data, replicates, lambda); errors are annotated with
/// the lambda and replicate id they arose in.
CandidateEvaluation evaluate_candidate(const Dataset& data, double lambda,
                                       std::span<const ReplicateSet> replicates,
                                       const MetricConfig& metric,
                                       const LassoSpec& solver,
                                       const ReferenceSolution& reference);

/// Convenience overload that derives the replicates from the plan. Because
/// replicates are seeded per (master_seed, id), every candidate sees the
/// same index sets.
CandidateEvaluation evaluate_candidate(const Dataset& data, double lambda,
                                       const PerturbationPlan& plan,
                                       const MetricConfig& metric,
                                       const ReferenceSolution& reference,
                                       const LassoSpec& solver = LassoSpec{});

/// Evaluates every lambda in the grid against a shared replicate set and
/// selects the zeta-maximizing candidate; ties within kZetaTieTolerance are
/// broken toward the largest lambda and recorded in tie_note. Throws
/// SelectionError when every candidate falls below the performance floor.
/// With threads > 1 candidates are evaluated concurrently; the report is
/// identical to sequential execution.
SelectionReport select(const Dataset& data, const GridSpec& grid,
                       const ReferenceSolution& reference, int threads = 1);

}  // namespace interpsel
