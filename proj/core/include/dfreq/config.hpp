#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfreq/diffusion.hpp"
#include "dfreq/phasegen.hpp"

namespace dfreq {

enum class AlgoSelect { damtcc, daclms, both };

struct ImpulseConfig {
  double prob = 0.005;
  double variance = 10.0;
};

// Full experiment description. Defaults reproduce the standard setting:
// 50 Hz system sampled at 2.5 kHz, 8-node fixture network, 40 dB
// everywhere, Bernoulli-Gaussian output impulses with p = 0.005 and
// variance 10.
struct ExperimentConfig {
  NetworkTopology topology = NetworkTopology::fixture("topology1");
  std::vector<double> snr_db;  // per node; filled with 40 dB if empty
  std::optional<double> output_snr_db;
  std::optional<double> gamma;
  ImpulseConfig impulse;
  AlgoSelect algorithm = AlgoSelect::damtcc;
  double mu = 0.005;
  double sigma = 1.0;
  bool freeze_conjugate = false;
  std::vector<ScenarioEvent> scenario;  // defaults to one balanced segment
  double dt = 1.0 / 2500.0;
  long iters = 5000;
  int monte_carlo_runs = 1;
  std::uint64_t seed = 1;
  std::vector<double> snr_sweep_db = {10, 15, 20, 25, 30, 35, 40};
  std::vector<double> mu_multipliers = {0.1, 50.0};
  double steady_window_fraction = 0.2;
  bool shared_measurement_noise = false;

  void validate() const;  // throws std::invalid_argument with a specific message
  Scenario make_scenario() const;
  long steady_window() const;  // trailing window length in iterations
};

// Parses the JSON experiment format (grammar documented in the README).
// Unknown keys, range violations and disconnected topologies are rejected
// with distinct diagnostics.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Per-node SNR spread used alongside the fixture topologies when a run
// wants unequal sensors (values in dB, one per node).
std::vector<double> fixture_snr_schedule(int n);

}  // namespace dfreq
