#include "dfreq/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "dfreq/analysis.hpp"

namespace dfreq {

namespace {

constexpr std::uint64_t kRunTag = 0x52554e;

std::vector<Algorithm> selected_algorithms(AlgoSelect s) {
  switch (s) {
    case AlgoSelect::damtcc: return {Algorithm::damtcc};
    case AlgoSelect::daclms: return {Algorithm::daclms};
    case AlgoSelect::both: return {Algorithm::damtcc, Algorithm::daclms};
  }
  throw std::logic_error("unknown algorithm selection");
}

NoiseConfig node_noise(const ExperimentConfig& cfg, int node, std::uint64_t run_seed) {
  NoiseConfig nc;
  nc.snr_db = cfg.snr_db[static_cast<std::size_t>(node)];
  nc.output_snr_db = cfg.output_snr_db;
  nc.gamma = cfg.gamma;
  nc.impulse_prob = cfg.impulse.prob;
  nc.impulse_var = cfg.impulse.variance;
  nc.shared_measurement_noise = cfg.shared_measurement_noise;
  nc.seed = derive_seed(run_seed, static_cast<std::uint64_t>(node));
  return nc;
}

// per-node filter parameters; gamma defaults to the node's noise ratio
FilterParams node_filter_params(const ExperimentConfig& cfg, const NoiseConfig& nc,
                                double initial_power) {
  FilterParams p;
  p.mu = cfg.mu;
  p.sigma = cfg.sigma;
  p.gamma = nc.gamma_ratio(initial_power);
  p.freeze_conjugate = cfg.freeze_conjugate;
  return p;
}

struct PreparedRun {
  std::vector<std::vector<NoisyPair>> streams;  // per node
  std::vector<FilterParams> params;             // per node
};

PreparedRun prepare_run(const ExperimentConfig& cfg, const Scenario& scenario,
                        std::span<const cplx> clean, std::span<const double> powers,
                        int run_index) {
  const std::uint64_t run_seed = derive_seed(cfg.seed, kRunTag + static_cast<std::uint64_t>(run_index));
  PreparedRun out;
  out.streams.reserve(static_cast<std::size_t>(cfg.topology.n));
  out.params.reserve(static_cast<std::size_t>(cfg.topology.n));
  const double p0 = scenario.power_at(0);
  for (int l = 0; l < cfg.topology.n; ++l) {
    const NoiseConfig nc = node_noise(cfg, l, run_seed);
    out.streams.push_back(corrupt_stream(clean, nc, powers));
    out.params.push_back(node_filter_params(cfg, nc, p0));
  }
  return out;
}

NetworkState make_network(const ExperimentConfig& cfg, const std::vector<FilterParams>& params) {
  std::vector<NodeState> nodes;
  nodes.reserve(params.size());
  for (const FilterParams& p : params) nodes.push_back({AugmentedWeights{}, p});
  return NetworkState(cfg.topology, metropolis_weights(cfg.topology), std::move(nodes));
}

MetricSeries run_algorithms(const ExperimentConfig& cfg) {
  cfg.validate();
  const Scenario scenario = cfg.make_scenario();
  const std::vector<cplx> clean = scenario.stream(cfg.iters + 1);
  std::vector<double> powers(clean.size());
  for (long t = 0; t < static_cast<long>(clean.size()); ++t)
    powers[static_cast<std::size_t>(t)] = scenario.power_at(t);

  MetricSeries series;
  for (int r = 0; r < cfg.monte_carlo_runs; ++r) {
    const PreparedRun prep = prepare_run(cfg, scenario, clean, powers, r);
    for (Algorithm alg : selected_algorithms(cfg.algorithm)) {
      NetworkState state = make_network(cfg, prep.params);
      MetricSeries part = run(state, prep.streams, cfg.iters, alg, scenario.dt(), r);
      series.insert(series.end(), part.begin(), part.end());
    }
  }
  return series;
}

}  // namespace

MetricSeries run_tracking(const ExperimentConfig& cfg) { return run_algorithms(cfg); }

void run_tracking_to_csv(const ExperimentConfig& cfg, const std::string& out_path) {
  write_metric_csv(out_path, run_tracking(cfg));
}

std::vector<SweepRow> run_snr_sweep(const ExperimentConfig& cfg,
                                    std::span<const double> snr_list) {
  cfg.validate();
  if (snr_list.empty()) throw std::invalid_argument("snr list must be nonempty");

  std::vector<SweepRow> rows;
  for (double snr : snr_list) {
    ExperimentConfig point = cfg;
    point.snr_db.assign(static_cast<std::size_t>(cfg.topology.n), snr);
    const MetricSeries series = run_algorithms(point);

    for (Algorithm alg : selected_algorithms(cfg.algorithm)) {
      MetricSeries filtered;
      for (const MetricRow& r : series)
        if (r.algorithm == alg) filtered.push_back(r);
      const auto stats = bias_variance(filtered, point.make_scenario().params_at(cfg.iters - 1).freq,
                                       point.steady_window());
      for (const NodeStats& st : stats) {
        rows.push_back({snr, st.node, alg, cfg.freeze_conjugate, st.bias, st.variance,
                        st.samples, st.invalid});
      }
    }
  }
  return rows;
}

void run_snr_sweep_to_csv(const ExperimentConfig& cfg, const std::string& out_path) {
  write_sweep_csv(out_path, run_snr_sweep(cfg, cfg.snr_sweep_db));
}

StabilityReport run_stability_probe(const ExperimentConfig& cfg,
                                    std::span<const double> multipliers) {
  cfg.validate();
  if (multipliers.empty()) throw std::invalid_argument("multiplier list must be nonempty");

  const Scenario scenario = cfg.make_scenario();
  const std::vector<cplx> clean = scenario.stream(cfg.iters + 1);
  std::vector<double> powers(clean.size());
  for (long t = 0; t < static_cast<long>(clean.size()); ++t)
    powers[static_cast<std::size_t>(t)] = scenario.power_at(t);

  // oracle solution from the first clean samples; covariance and noise
  // level from what node 0 actually observes
  const AugmentedWeights w0 = solve_wl_weights(clean);
  const std::uint64_t probe_seed = derive_seed(cfg.seed, kRunTag);
  const NoiseConfig nc0 = node_noise(cfg, 0, probe_seed);
  const double sigma_i2 = nc0.input_variance(scenario.power_at(0));
  const double gamma = cfg.gamma.value_or(nc0.gamma_ratio(scenario.power_at(0)));

  std::vector<cplx> observed;
  observed.reserve(clean.size() - 1);
  {
    const auto pairs = corrupt_stream(clean, nc0, powers);
    for (const NoisyPair& p : pairs) observed.push_back(p.x);
  }

  StabilityReport report;
  report.w_bar_norm2 = std::norm(w0.h) + std::norm(w0.g) + gamma;
  report.kappa = kappa(cfg.sigma, sigma_i2);
  const Mat2c r = input_covariance(observed);
  std::tie(report.lambda_min, report.lambda_max) = hermitian_eigenvalues(r);
  report.mu_max = stability_bound({r, cfg.sigma, sigma_i2, report.w_bar_norm2});

  const Algorithm alg = cfg.algorithm == AlgoSelect::daclms ? Algorithm::daclms
                                                            : Algorithm::damtcc;
  for (double m : multipliers) {
    ExperimentConfig probe = cfg;
    probe.mu = m * report.mu_max;
    const PreparedRun prep = prepare_run(probe, scenario, clean, powers, 0);
    NetworkState state = make_network(probe, prep.params);

    double max_norm = 0.0;
    std::vector<RegressorPair> samples;
    samples.reserve(static_cast<std::size_t>(probe.topology.n));
    for (long it = 0; it < probe.iters; ++it) {
      samples.clear();
      for (int l = 0; l < probe.topology.n; ++l)
        samples.emplace_back(prep.streams[static_cast<std::size_t>(l)][static_cast<std::size_t>(it)]);
      const auto psi = adapt_all(state, samples, alg, nullptr);
      const auto combined = combine_all(psi, state.combination);
      for (int l = 0; l < probe.topology.n; ++l) {
        state.nodes[static_cast<std::size_t>(l)].weights = combined[static_cast<std::size_t>(l)];
        const double norm = combined[static_cast<std::size_t>(l)].norm();
        if (!std::isfinite(norm)) {
          max_norm = std::numeric_limits<double>::infinity();
        } else if (norm > max_norm) {
          max_norm = norm;
        }
      }
      if (std::isinf(max_norm)) break;  // nonfinite weights stay nonfinite
    }
    report.rows.push_back({m, probe.mu, max_norm});
  }
  return report;
}

}  // namespace dfreq
