#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace interpsel {

/// One bootstrap draw: the in-bag index multiset (size n, sampled with
/// replacement) and its out-of-bag complement.
struct ReplicateSet {
  std::vector<Eigen::Index> in_bag;
  std::vector<Eigen::Index> out_of_bag;  // ascending
  int replicate_id = 0;                  // 1-based
};

struct PerturbationPlan {
  int m = 50;
  std::uint64_t master_seed = 2;

  void validate() const;
};

/// Draws m bootstrap replicates over labels.size() samples. Replicate j is
/// seeded independently from (master_seed, j), so the result does not depend
/// on evaluation order and shrinking m keeps the leading replicates
/// unchanged. A draw with an empty out-of-bag set or a single-class in-bag
/// multiset is redrawn with an incremented sub-seed; more than 100 redraws
/// for one replicate raises PerturbationError.
std::vector<ReplicateSet> make_replicates(const Eigen::VectorXd& labels,
                                          const PerturbationPlan& plan);

}  // namespace interpsel
