#include "interpsel/perturbation.hpp"

#include <random>
#include <string>

#include "interpsel/errors.hpp"
#include "interpsel/rng.hpp"

namespace interpsel {

void PerturbationPlan::validate() const {
  if (m < 2) throw ConfigError("replicate count m must be at least 2");
}

namespace {

constexpr int kMaxRedraws = 100;

ReplicateSet draw_replicate(const Eigen::VectorXd& labels, int replicate_id,
                            std::uint64_t master_seed) {
  const auto n = static_cast<std::size_t>(labels.size());
  const std::uint64_t replicate_seed =
      rng::derive_seed(master_seed, static_cast<std::uint64_t>(replicate_id));

  ReplicateSet replicate;
  replicate.replicate_id = replicate_id;
  std::vector<bool> seen(n);

  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::mt19937_64 engine(
        rng::derive_seed(replicate_seed, static_cast<std::uint64_t>(attempt)));
    replicate.in_bag.clear();
    replicate.in_bag.reserve(n);
    seen.assign(n, false);
    bool saw_positive = false;
    bool saw_negative = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto index =
          static_cast<Eigen::Index>(rng::uniform_index(engine, n));
      replicate.in_bag.push_back(index);
      seen[static_cast<std::size_t>(index)] = true;
      (labels[index] > 0.0 ? saw_positive : saw_negative) = true;
    }
    if (!saw_positive || !saw_negative) continue;  // one-class bag, redraw

    replicate.out_of_bag.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) replicate.out_of_bag.push_back(static_cast<Eigen::Index>(i));
    if (replicate.out_of_bag.empty()) continue;

    return replicate;
  }
  throw PerturbationError("replicate " + std::to_string(replicate_id) +
                          ": no usable bootstrap draw in " +
                          std::to_string(kMaxRedraws) + " redraws (n = " +
                          std::to_string(n) + " is too small)");
}

}  // namespace

std::vector<ReplicateSet> make_replicates(const Eigen::VectorXd& labels,
                                          const PerturbationPlan& plan) {
  plan.validate();
  if (labels.size() < 2)
    throw InputError("bootstrap needs at least 2 samples");

  std::vector<ReplicateSet> replicates;
  replicates.reserve(static_cast<std::size_t>(plan.m));
  for (int j = 1; j <= plan.m; ++j)
    replicates.push_back(draw_replicate(labels, j, plan.master_seed));
  return replicates;
}

}  // namespace interpsel
