// Bootstrap plan: B with-replacement index vectors of length N, regenerated
// deterministically from (N, B, master_seed). Replicate 0 is the identity
// view of the original data and rides along so the point estimate can be
// reweighted exactly like the credible sets.

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gpc/dataset.hpp"

namespace gpc {

class BootstrapPlan {
 public:
  BootstrapPlan(int n, int b, std::uint64_t master_seed);

  int n() const { return n_; }
  int b() const { return b_; }
  std::uint64_t master_seed() const { return master_seed_; }

  // replicate 0 is the identity; 1..B are the bootstrap resamples.
  DatasetView view(const Dataset& data, int replicate) const;
  const std::vector<int>& indices(int replicate) const;

  // Plans are value-equal iff (N, B, master_seed) are equal.
  bool operator==(const BootstrapPlan& other) const {
    return n_ == other.n_ && b_ == other.b_ &&
           master_seed_ == other.master_seed_;
  }

  // Sidecar holds seed and dims only; vectors are regenerated on load.
  nlohmann::json to_json() const;
  static BootstrapPlan from_json(const nlohmann::json& j);

 private:
  int n_;
  int b_;
  std::uint64_t master_seed_;
  std::vector<std::vector<int>> index_vectors_;  // b_ entries
  std::vector<int> identity_;
};

}  // namespace gpc
