#include "interpsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "interpsel/errors.hpp"

namespace interpsel {

void MetricConfig::validate() const {
  if (!(omega1 >= 0.0) || !(omega2 >= 0.0))
    throw ConfigError("omega weights must be nonnegative");
  if (!(omega1 + omega2 > 0.0))
    throw ConfigError("omega1 + omega2 must be positive");
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw ConfigError("kappa must lie in [0, 1]");
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size())
    throw InputError("cosine of vectors with different lengths");
  const double norm_a = a.norm();
  const double norm_b = b.norm();
  if (norm_a == 0.0 || norm_b == 0.0)
    throw DegenerateModelError("cosine of a zero vector is undefined");
  return std::clamp(a.dot(b) / (norm_a * norm_b), -1.0, 1.0);
}

InterpretabilityResult interpretability(
    std::span<const std::optional<Mbm>> replicate_mbms,
    const ReferenceSolution& reference) {
  if (replicate_mbms.empty())
    throw MetricError("interpretability over an empty replicate list");
  InterpretabilityResult result;
  double sum = 0.0;
  int used = 0;
  for (const auto& mbm : replicate_mbms) {
    if (!mbm.has_value()) {
      ++result.degenerate_count;
      continue;
    }
    sum += cosine(mbm->direction, reference.mbm_star);
    ++used;
  }
  if (used == 0)
    throw MetricError("every replicate is degenerate; eta is undefined");
  result.eta = sum / used;
  return result;
}

double performance(std::span<const ReplicateSet> replicates,
                   std::span<const WeightVector> fitted_models,
                   const Dataset& data) {
  if (replicates.empty()) throw MetricError("no replicates to score");
  if (replicates.size() != fitted_models.size())
    throw InputError("one fitted model per replicate is required");

  double error_sum = 0.0;
  for (std::size_t j = 0; j < replicates.size(); ++j) {
    const auto& oob = replicates[j].out_of_bag;
    if (oob.empty())
      throw MetricError("replicate " +
                        std::to_string(replicates[j].replicate_id) +
                        " has an empty out-of-bag set");
    Eigen::MatrixXd held_out(static_cast<Eigen::Index>(oob.size()), data.p());
    for (std::size_t i = 0; i < oob.size(); ++i)
      held_out.row(static_cast<Eigen::Index>(i)) = data.X.row(oob[i]);
    const Eigen::VectorXd predicted = predict(fitted_models[j], held_out);
    int mistakes = 0;
    for (std::size_t i = 0; i < oob.size(); ++i)
      if (predicted[static_cast<Eigen::Index>(i)] != data.y[oob[i]]) ++mistakes;
    error_sum += static_cast<double>(mistakes) / static_cast<double>(oob.size());
  }
  const double epe = error_sum / static_cast<double>(replicates.size());
  return 1.0 - epe;
}

double scalarize(double eta, double delta, const MetricConfig& config) {
  config.validate();
  if (!(delta >= 0.0 && delta <= 1.0))
    throw InputError("delta must lie in [0, 1]");
  if (delta < config.kappa) return 0.0;
  return (config.omega1 * eta + config.omega2 * delta) /
         (config.omega1 + config.omega2);
}

bool is_strongly_interpretable(const Mbm& mbm,
                               const ReferenceSolution& reference,
                               double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  return cosine(mbm.direction, reference.mbm_star) >= 1.0 - tol;
}

std::vector<int> pareto_front(
    std::span<const CandidateEvaluation> candidates) {
  if (candidates.empty())
    throw InputError("pareto front of an empty candidate list");
  std::vector<int> front;
  for (std::size_t b = 0; b < candidates.size(); ++b) {
    bool dominated = false;
    for (std::size_t a = 0; a < candidates.size() && !dominated; ++a) {
      if (a == b) continue;
      dominated = candidates[a].eta >= candidates[b].eta &&
                  candidates[a].delta >= candidates[b].delta &&
                  (candidates[a].eta > candidates[b].eta ||
                   candidates[a].delta > candidates[b].delta);
    }
    if (!dominated) front.push_back(static_cast<int>(b));
  }
  return front;
}

}  // namespace interpsel
