#include "interpsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "interpsel/errors.hpp"

namespace interpsel {

void GridSpec::validate() const {
  if (lambdas.empty()) throw ConfigError("lambda grid is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i]))
      throw ConfigError("lambda values must be finite and nonnegative");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      throw ConfigError("lambda grid must be strictly ascending");
  }
  plan.validate();
  metric.validate();
  solver.validate();
}

GridSpec GridSpec::defaults(std::uint64_t master_seed) {
  GridSpec grid;
  grid.lambdas = {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 50.0, 100.0, 250.0, 500.0, 1000.0};
  grid.plan.m = 50;
  grid.plan.master_seed = master_seed;
  return grid;
}

namespace {

std::string format_lambda(double lambda) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", lambda);
  return buffer;
}

// Re-throws the in-flight exception with run context prepended, keeping the
// concrete error type.
[[noreturn]] void rethrow_annotated(const std::string& context) {
  try {
    throw;
  } catch (const DegenerateModelError& e) {
    throw DegenerateModelError(context + e.what());
  } catch (const MetricError& e) {
    throw MetricError(context + e.what());
  } catch (const InputError& e) {
    throw InputError(context + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + e.what());
  } catch (const Error& e) {
    throw Error(context + e.what());
  }
}

Dataset in_bag_subset(const Dataset& data, const ReplicateSet& replicate) {
  Dataset bag;
  bag.X.resize(static_cast<Eigen::Index>(replicate.in_bag.size()), data.p());
  bag.y.resize(static_cast<Eigen::Index>(replicate.in_bag.size()));
  for (std::size_t i = 0; i < replicate.in_bag.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    bag.X.row(row) = data.X.row(replicate.in_bag[i]);
    bag.y[row] = data.y[replicate.in_bag[i]];
  }
  return bag;
}

}  // namespace

CandidateEvaluation evaluate_candidate(const Dataset& data, double lambda,
                                       std::span<const ReplicateSet> replicates,
                                       const MetricConfig& metric,
                                       const LassoSpec& solver,
                                       const ReferenceSolution& reference) {
  LassoSpec spec = solver;
  spec.lambda = lambda;

  CandidateEvaluation evaluation;
  evaluation.lambda = lambda;

  std::vector<WeightVector> models;
  models.reserve(replicates.size());
  evaluation.replicate_mbms.reserve(replicates.size());
  for (const ReplicateSet& replicate : replicates) {
    try {
      models.push_back(fit_lasso(in_bag_subset(data, replicate), spec));
      const WeightVector& model = models.back();
      evaluation.replicate_mbms.push_back(
          model.theta.isZero(0.0) ? std::optional<Mbm>{}
                                  : std::optional<Mbm>{normalize(model)});
    } catch (const Error&) {
      rethrow_annotated("lambda = " + format_lambda(lambda) +
                        ", replicate " + std::to_string(replicate.replicate_id) +
                        ": ");
    }
  }

  try {
    const WeightVector full_fit = fit_lasso(data, spec);
    evaluation.full_fit_mbm = full_fit.theta.isZero(0.0)
                                  ? std::optional<Mbm>{}
                                  : std::optional<Mbm>{normalize(full_fit)};
    evaluation.delta = performance(replicates, models, data);
    const InterpretabilityResult interp =
        interpretability(evaluation.replicate_mbms, reference);
    evaluation.eta = interp.eta;
    evaluation.degenerate_replicates = interp.degenerate_count;
    evaluation.zeta = scalarize(evaluation.eta, evaluation.delta, metric);
  } catch (const Error&) {
    rethrow_annotated("lambda = " + format_lambda(lambda) + ": ");
  }
  return evaluation;
}

CandidateEvaluation evaluate_candidate(const Dataset& data, double lambda,
                                       const PerturbationPlan& plan,
                                       const MetricConfig& metric,
                                       const ReferenceSolution& reference,
                                       const LassoSpec& solver) {
  const std::vector<ReplicateSet> replicates = make_replicates(data.y, plan);
  return evaluate_candidate(data, lambda, replicates, metric, solver, reference);
}

SelectionReport select(const Dataset& data, const GridSpec& grid,
                       const ReferenceSolution& reference, int threads) {
  data.validate();
  grid.validate();
  const std::vector<ReplicateSet> replicates =
      make_replicates(data.y, grid.plan);

  SelectionReport report;
  const auto count = grid.lambdas.size();
  report.candidates.resize(count);

  const auto evaluate_into = [&](std::size_t index) {
    report.candidates[index] =
        evaluate_candidate(data, grid.lambdas[index], replicates, grid.metric,
                           grid.solver, reference);
  };

  const int workers = std::clamp<int>(threads, 1, static_cast<int>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) evaluate_into(i);
  } else {
    // Each candidate writes into its own slot, so the result cannot depend
    // on scheduling; the first failure (by candidate index) is re-thrown.
    std::vector<std::exception_ptr> failures(count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int worker = 0; worker < workers; ++worker) {
      pool.emplace_back([&, worker] {
        for (std::size_t i = static_cast<std::size_t>(worker); i < count;
             i += static_cast<std::size_t>(workers)) {
          try {
            evaluate_into(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& thread : pool) thread.join();
    for (const std::exception_ptr& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }

  if (std::none_of(report.candidates.begin(), report.candidates.end(),
                   [&](const CandidateEvaluation& candidate) {
                     return candidate.delta >= grid.metric.kappa;
                   }))
    throw SelectionError("no candidate above performance floor kappa = " +
                         format_lambda(grid.metric.kappa));

  double max_zeta = report.candidates.front().zeta;
  for (const CandidateEvaluation& candidate : report.candidates)
    max_zeta = std::max(max_zeta, candidate.zeta);

  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < count; ++i)
    if (report.candidates[i].zeta >= max_zeta - kZetaTieTolerance)
      tied.push_back(i);

  // Lambdas ascend, so the last tied index is the sparsest candidate.
  report.selected_index = static_cast<int>(tied.back());
  report.selected_lambda = grid.lambdas[tied.back()];
  if (tied.size() > 1) {
    std::string note = "zeta tie within 1e-09 among lambda = {";
    for (std::size_t i = 0; i < tied.size(); ++i) {
      if (i > 0) note += ", ";
      note += format_lambda(grid.lambdas[tied[i]]);
    }
    note += "}; broke toward the largest lambda";
    report.tie_note = note;
  }

  report.pareto_indices = pareto_front(report.candidates);
  return report;
}

}  // namespace interpsel
