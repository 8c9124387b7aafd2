#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dfreq/rng.hpp"

namespace dfreq {

// Errors-in-variables noise model for one sensor node: independent complex
// Gaussian noise on the regressor (input) and on the desired sample
// (output), plus Bernoulli-Gaussian impulses on the output only.
//
// snr_db is taken against the analytic signal power of the scenario
// segment; +infinity means noiseless. The output variance defaults to the
// same SNR as the input; an explicit gamma pins sigma_o^2 = gamma *
// sigma_i^2 instead.
struct NoiseConfig {
  double snr_db = 40.0;
  std::optional<double> output_snr_db;
  std::optional<double> gamma;
  double impulse_prob = 0.005;
  double impulse_var = 10.0;
  bool shared_measurement_noise = false;
  std::uint64_t seed = 1;

  void validate() const;
  double input_variance(double signal_power) const;
  double output_variance(double signal_power) const;
  // sigma_o^2 / sigma_i^2 as seen by the filter; 1 when both vanish
  double gamma_ratio(double signal_power) const;
};

// One noisy observation: x = v(tau) + m(tau) (regressor) and
// d = v(tau+1) + n(tau) + i(tau) (desired).
struct NoisyPair {
  cplx x;
  cplx d;
};

// sigma^2 = signal_power * 10^(-snr_db/10); signal_power must be > 0
double snr_to_variance(double signal_power, double snr_db);

// adds independent real/imag Gaussian components of variance var/2 each
cplx add_complex_gaussian(cplx v, double var, GaussianSource& rng);

// with probability p: complex Gaussian of total variance var; else 0
cplx impulsive_sample(double p, double var, GaussianSource& rng);

// Turns n clean samples into n-1 noisy regressor/desired pairs. Input,
// output and impulse noise come from three independently seeded
// substreams of cfg.seed, so the same seed always reproduces the same
// pairs bit for bit. power_per_sample[tau] is the analytic segment power
// used to convert SNR to variance at sample tau.
std::vector<NoisyPair> corrupt_stream(std::span<const cplx> clean, const NoiseConfig& cfg,
                                      std::span<const double> power_per_sample);
std::vector<NoisyPair> corrupt_stream(std::span<const cplx> clean, const NoiseConfig& cfg,
                                      double signal_power);

}  // namespace dfreq
