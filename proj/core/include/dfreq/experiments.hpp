#pragma once

#include <span>
#include <string>

#include "dfreq/config.hpp"
#include "dfreq/csv.hpp"

namespace dfreq {

// Per-iteration, per-node frequency estimates for the configured scenario;
// covers every selected algorithm and Monte-Carlo run. Seeds for run r and
// node l derive deterministically from the master seed, independent of the
// algorithm, so compared algorithms see identical noise.
MetricSeries run_tracking(const ExperimentConfig& cfg);
void run_tracking_to_csv(const ExperimentConfig& cfg, const std::string& out_path);

// Steady-state bias/variance per (snr, node, algorithm) with the SNR
// applied to all nodes; Monte-Carlo runs share seeds across SNR values.
std::vector<SweepRow> run_snr_sweep(const ExperimentConfig& cfg,
                                    std::span<const double> snr_list);
void run_snr_sweep_to_csv(const ExperimentConfig& cfg, const std::string& out_path);

// Computes the step-size bound from the configured scenario (oracle
// weights from three clean samples, covariance from the noisy regressor
// stream of node 0), then runs the configured algorithm at mu =
// multiplier * mu_max and reports the largest weight norm seen. A
// nonfinite trajectory reports +inf.
StabilityReport run_stability_probe(const ExperimentConfig& cfg,
                                    std::span<const double> multipliers);

}  // namespace dfreq
