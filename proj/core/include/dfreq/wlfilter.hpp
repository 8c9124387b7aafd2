#pragma once

#include <span>
#include <vector>

#include "dfreq/noise.hpp"
#include "dfreq/rng.hpp"

namespace dfreq {

enum class Algorithm { damtcc, daclms };

const char* algorithm_name(Algorithm a);

// Widely-linear weight pair. h multiplies the voltage, g its conjugate:
// the one-step prediction is v_hat(tau+1) = h*v(tau) + g*conj(v(tau)).
// On a balanced (circular) stream the optimum is h = e^{j w dt}, g = 0;
// unbalance shows up as |g| > 0.
struct AugmentedWeights {
  cplx h{1.0, 0.0};
  cplx g{0.0, 0.0};

  double norm() const;  // sqrt(|h|^2 + |g|^2)
};

struct FilterParams {
  double mu = 0.005;   // step size
  double sigma = 1.0;  // correntropy kernel width
  double gamma = 1.0;  // noise variance ratio sigma_o^2/sigma_i^2
  bool freeze_conjugate = false;  // strictly-linear mode: g pinned at 0

  void validate() const;
};

// Regressor/desired pair; the augmented regressor is [v, conj(v)].
struct RegressorPair {
  cplx v;
  cplx d;

  RegressorPair(cplx v_, cplx d_) : v(v_), d(d_) {}
  explicit RegressorPair(const NoisyPair& p) : v(p.x), d(p.d) {}
};

struct FrequencyEstimate {
  double f_hat = 0.0;
  bool valid = false;
};

struct WlGradients {
  cplx h;
  cplx g;
};

cplx predict(const AugmentedWeights& w, cplx v);
cplx prediction_error(cplx d, const AugmentedWeights& w, cplx v);

// Conjugate (Wirtinger) gradients of the instantaneous total-correntropy
// objective exp(-|e|^2 / (2 sigma^2 D)), D = |h|^2 + |g|^2 + gamma:
//
//   grad_h = exp(-|e|^2/(2 s^2 D)) (e conj(v) D + |e|^2 h) / (2 s^2 D^2)
//   grad_g = exp(-|e|^2/(2 s^2 D)) (e v       D + |e|^2 g) / (2 s^2 D^2)
//
// The exponential factor suppresses updates from impulsive errors; the
// |e|^2 w term and the D normalization carry the total-least-squares
// correction for input noise. Throws std::domain_error when D == 0
// (only possible with gamma == 0 and zero weights).
WlGradients damtcc_gradients(cplx e, cplx v, const AugmentedWeights& w, const FilterParams& p);

// gradient-ascent step on the correntropy objective (mu > 0)
AugmentedWeights damtcc_adapt(const AugmentedWeights& w, const WlGradients& grads,
                              const FilterParams& p);

// augmented CLMS baseline: h += mu e conj(v), g += mu e v
AugmentedWeights daclms_adapt(const AugmentedWeights& w, cplx e, cplx v, double mu);

// error + gradients + local update for either algorithm; the returned
// weights are the pre-combination intermediate estimate
AugmentedWeights adapt_step(const AugmentedWeights& w, const RegressorPair& sample,
                            const FilterParams& p, Algorithm alg, double* sq_error = nullptr);

// Frequency from the weight pair:
//   f_hat = arcsin(Im(h + a g)) / (2 pi dt)
// where a g = -j Im(h) + j sqrt(Im(h)^2 - |g|^2) (positive root; the
// system frequency is far below Nyquist so Im of the rotation factor is
// positive). g == 0 falls back to the strictly-linear arcsin(Im(h)).
// A negative discriminant is clamped to zero and flagged invalid, as is
// an arcsin argument outside [-1, 1]; flagged estimates still carry a
// finite f_hat whenever the inputs are finite.
FrequencyEstimate frequency_estimate(const AugmentedWeights& w, double dt);

// Single-node trajectory; the network driver with one node must reproduce
// this bit for bit.
struct SingleRunRecord {
  AugmentedWeights weights;
  double sq_error = 0.0;
  FrequencyEstimate estimate;
};

std::vector<SingleRunRecord> run_single(AugmentedWeights w0, const FilterParams& p,
                                        std::span<const NoisyPair> stream, double dt,
                                        Algorithm alg);

}  // namespace dfreq
