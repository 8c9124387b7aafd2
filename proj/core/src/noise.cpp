#include "dfreq/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dfreq {

namespace {
// substream tags for deriving independent engines from one node seed
constexpr std::uint64_t kInputTag = 0x494e;
constexpr std::uint64_t kOutputTag = 0x4f5554;
constexpr std::uint64_t kImpulseTag = 0x494d50;
}  // namespace

void NoiseConfig::validate() const {
  if (std::isnan(snr_db)) throw std::invalid_argument("snr_db must not be NaN");
  if (output_snr_db && std::isnan(*output_snr_db))
    throw std::invalid_argument("output_snr_db must not be NaN");
  if (output_snr_db && gamma)
    throw std::invalid_argument("output_snr_db and gamma are mutually exclusive");
  if (gamma && (!(*gamma >= 0.0) || !std::isfinite(*gamma)))
    throw std::invalid_argument("gamma must be finite and >= 0");
  if (!(impulse_prob >= 0.0) || !(impulse_prob <= 1.0))
    throw std::invalid_argument("impulse_prob must lie in [0, 1]");
  if (!(impulse_var >= 0.0) || !std::isfinite(impulse_var))
    throw std::invalid_argument("impulse_var must be finite and >= 0");
}

double NoiseConfig::input_variance(double signal_power) const {
  if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;  // noiseless
  return snr_to_variance(signal_power, snr_db);
}

double NoiseConfig::output_variance(double signal_power) const {
  if (gamma) return *gamma * input_variance(signal_power);
  const double snr = output_snr_db.value_or(snr_db);
  if (std::isinf(snr) && snr > 0.0) return 0.0;
  return snr_to_variance(signal_power, snr);
}

double NoiseConfig::gamma_ratio(double signal_power) const {
  if (gamma) return *gamma;
  const double si2 = input_variance(signal_power);
  if (si2 == 0.0) return 1.0;  // noiseless: ratio is undefined, use 1
  return output_variance(signal_power) / si2;
}

double snr_to_variance(double signal_power, double snr_db) {
  if (!(signal_power > 0.0))
    throw std::invalid_argument("signal_power must be positive");
  return signal_power * std::pow(10.0, -snr_db / 10.0);
}

cplx add_complex_gaussian(cplx v, double var, GaussianSource& rng) {
  if (var < 0.0) throw std::invalid_argument("variance must be >= 0");
  if (var == 0.0) return v;
  return v + std::sqrt(var / 2.0) * rng.standard_complex();
}

cplx impulsive_sample(double p, double var, GaussianSource& rng) {
  if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (rng.uniform01() >= p) return {0.0, 0.0};
  if (var == 0.0) return {0.0, 0.0};
  return std::sqrt(var / 2.0) * rng.standard_complex();
}

std::vector<NoisyPair> corrupt_stream(std::span<const cplx> clean, const NoiseConfig& cfg,
                                      std::span<const double> power_per_sample) {
  cfg.validate();
  if (clean.size() < 2) throw std::invalid_argument("clean stream needs at least 2 samples");
  if (power_per_sample.size() != clean.size())
    throw std::invalid_argument("one signal power per clean sample required");

  GaussianSource in_rng(derive_seed(cfg.seed, kInputTag));
  GaussianSource out_rng(derive_seed(cfg.seed, kOutputTag));
  GaussianSource imp_rng(derive_seed(cfg.seed, kImpulseTag));

  const std::size_t n = clean.size();
  std::vector<NoisyPair> out(n - 1);

  if (cfg.shared_measurement_noise) {
    // one measurement noise sequence: the desired sample at tau reuses the
    // regressor noise of tau+1
    std::vector<cplx> measured(n);
    for (std::size_t t = 0; t < n; ++t)
      measured[t] = add_complex_gaussian(clean[t], cfg.input_variance(power_per_sample[t]), in_rng);
    for (std::size_t t = 0; t + 1 < n; ++t) {
      out[t].x = measured[t];
      out[t].d = measured[t + 1] + impulsive_sample(cfg.impulse_prob, cfg.impulse_var, imp_rng);
    }
    return out;
  }

  for (std::size_t t = 0; t + 1 < n; ++t) {
    out[t].x = add_complex_gaussian(clean[t], cfg.input_variance(power_per_sample[t]), in_rng);
    out[t].d = add_complex_gaussian(clean[t + 1], cfg.output_variance(power_per_sample[t + 1]), out_rng) +
               impulsive_sample(cfg.impulse_prob, cfg.impulse_var, imp_rng);
  }
  return out;
}

std::vector<NoisyPair> corrupt_stream(std::span<const cplx> clean, const NoiseConfig& cfg,
                                      double signal_power) {
  std::vector<double> powers(clean.size(), signal_power);
  return corrupt_stream(clean, cfg, powers);
}

}  // namespace dfreq
