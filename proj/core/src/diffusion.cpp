#include "dfreq/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfreq {

std::string algorithm_label(Algorithm a, bool sl_mode) {
  std::string s = algorithm_name(a);
  if (sl_mode) s += "-sl";
  return s;
}

void NetworkTopology::validate() const {
  if (n < 1) throw std::invalid_argument("topology needs at least one node");
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (auto [i, l] : edges) {
    if (i < 0 || l < 0 || i >= n || l >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == l) throw std::invalid_argument("self loops are implicit, not listed");
    if (seen[i][l]) throw std::invalid_argument("duplicate edge");
    seen[i][l] = seen[l][i] = true;
  }
  if (!connected()) throw std::invalid_argument("topology must be connected");
}

bool NetworkTopology::connected() const {
  if (n < 1) return false;
  const auto adj = adjacency();
  std::vector<bool> visited(n, false);
  std::vector<int> stack{0};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!visited[v]) {
        visited[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

std::vector<std::vector<int>> NetworkTopology::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [i, l] : edges) {
    adj[i].push_back(l);
    adj[l].push_back(i);
  }
  return adj;
}

NetworkTopology NetworkTopology::fixture(std::string_view name) {
  if (name == "topology1") {
    // 8-node ring with three chords
    return {8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0},
                {0, 4}, {1, 5}, {2, 6}}};
  }
  if (name == "topology2") {
    // irregular connected graph on 8 nodes
    return {8, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 7},
                {1, 6}, {2, 5}, {3, 4}}};
  }
  throw std::invalid_argument("unknown topology fixture: " + std::string(name));
}

CombinationMatrix::CombinationMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("combination matrix needs n >= 1");
  c_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

void CombinationMatrix::validate_column_stochastic(double tol) const {
  for (int l = 0; l < n_; ++l) {
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (at(i, l) < 0.0) throw std::invalid_argument("combination weights must be >= 0");
      sum += at(i, l);
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("combination matrix columns must sum to 1");
  }
}

CombinationMatrix metropolis_weights(const NetworkTopology& t) {
  t.validate();
  const auto adj = t.adjacency();
  CombinationMatrix c(t.n);
  for (auto [i, l] : t.edges) {
    const double ni = static_cast<double>(adj[i].size()) + 1.0;
    const double nl = static_cast<double>(adj[l].size()) + 1.0;
    const double w = 1.0 / std::max(ni, nl);
    c.at(i, l) = w;
    c.at(l, i) = w;
  }
  for (int l = 0; l < t.n; ++l) {
    double off = 0.0;
    for (int i = 0; i < t.n; ++i)
      if (i != l) off += c.at(i, l);
    c.at(l, l) = 1.0 - off;
  }
  return c;
}

NetworkState::NetworkState(NetworkTopology t, CombinationMatrix c, std::vector<NodeState> ns)
    : topology(std::move(t)), combination(std::move(c)), nodes(std::move(ns)) {
  topology.validate();
  if (combination.size() != topology.n)
    throw std::invalid_argument("combination matrix size must match topology");
  if (static_cast<int>(nodes.size()) != topology.n)
    throw std::invalid_argument("one node state per topology node required");
  for (const auto& node : nodes) node.params.validate();
}

NetworkState NetworkState::uniform(const NetworkTopology& t, const FilterParams& p,
                                   const AugmentedWeights& w0) {
  std::vector<NodeState> ns(static_cast<std::size_t>(t.n), NodeState{w0, p});
  return NetworkState(t, metropolis_weights(t), std::move(ns));
}

std::vector<AugmentedWeights> adapt_all(const NetworkState& state,
                                        std::span<const RegressorPair> samples,
                                        Algorithm alg, std::vector<double>* sq_errors) {
  const std::size_t n = state.nodes.size();
  if (samples.size() != n)
    throw std::invalid_argument("one sample pair per node required");
  std::vector<AugmentedWeights> psi(n);
  if (sq_errors) sq_errors->assign(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double e2 = 0.0;
    psi[l] = adapt_step(state.nodes[l].weights, samples[l], state.nodes[l].params, alg, &e2);
    if (sq_errors) (*sq_errors)[l] = e2;
  }
  return psi;
}

std::vector<AugmentedWeights> combine_all(std::span<const AugmentedWeights> intermediates,
                                          const CombinationMatrix& c) {
  if (static_cast<int>(intermediates.size()) != c.size())
    throw std::invalid_argument("intermediate count must match combination matrix");
  const int n = c.size();
  std::vector<AugmentedWeights> out(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    // sum runs over the neighborhood only: zero weights are non-neighbors
    // and must not contribute (not even a 0 * x rounding term)
    cplx h{0.0, 0.0}, g{0.0, 0.0};
    bool first = true;
    for (int i = 0; i < n; ++i) {
      const double w = c.at(i, l);
      if (w == 0.0) continue;
      if (first) {
        h = w * intermediates[i].h;
        g = w * intermediates[i].g;
        first = false;
      } else {
        h += w * intermediates[i].h;
        g += w * intermediates[i].g;
      }
    }
    out[l] = {h, g};
  }
  return out;
}

MetricSeries run(NetworkState& state, const std::vector<std::vector<NoisyPair>>& streams,
                 long iters, Algorithm alg, double dt, int run_id) {
  if (iters <= 0) throw std::invalid_argument("iters must be positive");
  const std::size_t n = state.nodes.size();
  if (streams.size() != n) throw std::invalid_argument("one stream per node required");
  for (const auto& s : streams)
    if (static_cast<long>(s.size()) < iters)
      throw std::invalid_argument("stream shorter than requested iterations");

  const bool sl = state.nodes.front().params.freeze_conjugate;
  MetricSeries series;
  series.reserve(static_cast<std::size_t>(iters) * n);

  std::vector<RegressorPair> samples;
  samples.reserve(n);
  std::vector<double> sq_errors(n, 0.0);

  for (long it = 0; it < iters; ++it) {
    samples.clear();
    for (std::size_t l = 0; l < n; ++l)
      samples.emplace_back(streams[l][static_cast<std::size_t>(it)]);

    const auto psi = adapt_all(state, samples, alg, &sq_errors);
    const auto combined = combine_all(psi, state.combination);
    for (std::size_t l = 0; l < n; ++l) state.nodes[l].weights = combined[l];
    ++state.iteration;

    for (std::size_t l = 0; l < n; ++l) {
      const FrequencyEstimate fe = frequency_estimate(state.nodes[l].weights, dt);
      series.push_back({run_id, it, static_cast<int>(l), fe.f_hat, fe.valid,
                        sq_errors[l], alg, sl});
    }
  }
  return series;
}

}  // namespace dfreq
