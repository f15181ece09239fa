#include "gpc/bootstrap.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gpc/distributions.hpp"
#include "gpc/random.hpp"

namespace gpc {

BootstrapPlan::BootstrapPlan(int n, int b, std::uint64_t master_seed)
    : n_(n), b_(b), master_seed_(master_seed) {
  if (n < 1 || b < 1)
    throw std::invalid_argument("BootstrapPlan: need n >= 1 and b >= 1");
  identity_.resize(n);
  for (int i = 0; i < n; ++i) identity_[i] = i;
  index_vectors_.resize(b);
  for (int r = 0; r < b; ++r) {
    RandomStream rng(master_seed_, kBootstrapStreamTag | (r + 1));
    auto& idx = index_vectors_[r];
    idx.resize(n);
    for (int i = 0; i < n; ++i)
      idx[i] = static_cast<int>(uniform_index(n, rng));
  }
}

const std::vector<int>& BootstrapPlan::indices(int replicate) const {
  if (replicate < 0 || replicate > b_)
    throw std::out_of_range("BootstrapPlan: replicate out of range");
  if (replicate == 0) return identity_;
  return index_vectors_[replicate - 1];
}

DatasetView BootstrapPlan::view(const Dataset& data, int replicate) const {
  if (data.n != n_)
    throw std::invalid_argument("BootstrapPlan: dataset size mismatch");
  return DatasetView(data, indices(replicate));
}

nlohmann::json BootstrapPlan::to_json() const {
  return nlohmann::json{{"n", n_}, {"b", b_}, {"master_seed", master_seed_}};
}

BootstrapPlan BootstrapPlan::from_json(const nlohmann::json& j) {
  return BootstrapPlan(j.at("n").get<int>(), j.at("b").get<int>(),
                       j.at("master_seed").get<std::uint64_t>());
}

}  // namespace gpc
