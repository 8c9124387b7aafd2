#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dfreq/metrics.hpp"
#include "dfreq/noise.hpp"
#include "dfreq/wlfilter.hpp"

namespace dfreq {

// Undirected connected graph; self loops are implicit (every node is in
// its own neighborhood) and must not appear in the edge list.
struct NetworkTopology {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const;  // throws on bad indices, self loops, duplicates, disconnection
  bool connected() const;
  std::vector<std::vector<int>> adjacency() const;  // neighbor lists, self excluded

  // Built-in 8-node graphs: "topology1" is a ring with three chords,
  // "topology2" an irregular connected graph. Stand-ins for network
  // layouts that are only available as drawings; exact edge sets are
  // config-definable.
  static NetworkTopology fixture(std::string_view name);
};

// Column-stochastic combination weights: at(i, l) scales node i's
// intermediate estimate inside node l's combination.
class CombinationMatrix {
 public:
  explicit CombinationMatrix(int n);

  int size() const { return n_; }
  double& at(int i, int l) { return c_[static_cast<std::size_t>(i) * n_ + l]; }
  double at(int i, int l) const { return c_[static_cast<std::size_t>(i) * n_ + l]; }

  void validate_column_stochastic(double tol = 1e-12) const;

 private:
  int n_;
  std::vector<double> c_;
};

// Metropolis rule: for an edge {i,l}, c(i,l) = 1/max(n_i, n_l) with n_k =
// degree + 1 (the node itself counts); diagonals absorb the remainder so
// every column sums to one. Symmetric, hence doubly stochastic.
CombinationMatrix metropolis_weights(const NetworkTopology& t);

struct NodeState {
  AugmentedWeights weights;
  FilterParams params;
};

struct NetworkState {
  NetworkTopology topology;
  CombinationMatrix combination;
  std::vector<NodeState> nodes;
  long iteration = 0;

  NetworkState(NetworkTopology t, CombinationMatrix c, std::vector<NodeState> ns);

  // all nodes share the given parameters and start from weights w0
  static NetworkState uniform(const NetworkTopology& t, const FilterParams& p,
                              const AugmentedWeights& w0 = AugmentedWeights{});
};

// Local update at every node from its own sample; no cross-node reads.
// Returns the intermediate estimates; per-node |e|^2 lands in sq_errors
// when given.
std::vector<AugmentedWeights> adapt_all(const NetworkState& state,
                                        std::span<const RegressorPair> samples,
                                        Algorithm alg,
                                        std::vector<double>* sq_errors = nullptr);

// Column-stochastic combination of the intermediates.
std::vector<AugmentedWeights> combine_all(std::span<const AugmentedWeights> intermediates,
                                          const CombinationMatrix& c);

// Adapt-then-combine driver: per iteration, every node adapts on its own
// noisy pair, the intermediates are combined, and the frequency estimate
// is taken from the combined weights. Invalid estimates are recorded as
// flagged rows; the run never aborts on them.
MetricSeries run(NetworkState& state, const std::vector<std::vector<NoisyPair>>& streams,
                 long iters, Algorithm alg, double dt, int run_id = 0);

}  // namespace dfreq
