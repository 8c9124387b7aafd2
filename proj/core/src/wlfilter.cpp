#include "dfreq/wlfilter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfreq {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::damtcc: return "damtcc";
    case Algorithm::daclms: return "daclms";
  }
  return "unknown";
}

double AugmentedWeights::norm() const { return std::sqrt(std::norm(h) + std::norm(g)); }

void FilterParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("sigma must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be finite and >= 0");
}

cplx predict(const AugmentedWeights& w, cplx v) { return w.h * v + w.g * std::conj(v); }

cplx prediction_error(cplx d, const AugmentedWeights& w, cplx v) {
  return d - predict(w, v);
}

WlGradients damtcc_gradients(cplx e, cplx v, const AugmentedWeights& w,
                             const FilterParams& p) {
  const double den = std::norm(w.h) + std::norm(w.g) + p.gamma;
  if (den == 0.0)
    throw std::domain_error("degenerate state: |h|^2 + |g|^2 + gamma is zero");
  const double e2 = std::norm(e);
  const double s2 = p.sigma * p.sigma;
  const double gain = std::exp(-e2 / (2.0 * s2 * den));
  const double scale = gain / (2.0 * s2 * den * den);
  return {scale * (e * std::conj(v) * den + e2 * w.h),
          scale * (e * v * den + e2 * w.g)};
}

AugmentedWeights damtcc_adapt(const AugmentedWeights& w, const WlGradients& grads,
                              const FilterParams& p) {
  AugmentedWeights out = w;
  out.h += p.mu * grads.h;
  if (!p.freeze_conjugate) out.g += p.mu * grads.g;
  return out;
}

AugmentedWeights daclms_adapt(const AugmentedWeights& w, cplx e, cplx v, double mu) {
  return {w.h + mu * e * std::conj(v), w.g + mu * e * v};
}

AugmentedWeights adapt_step(const AugmentedWeights& w, const RegressorPair& sample,
                            const FilterParams& p, Algorithm alg, double* sq_error) {
  const cplx e = prediction_error(sample.d, w, sample.v);
  if (sq_error) *sq_error = std::norm(e);
  switch (alg) {
    case Algorithm::damtcc:
      return damtcc_adapt(w, damtcc_gradients(e, sample.v, w, p), p);
    case Algorithm::daclms: {
      AugmentedWeights out = daclms_adapt(w, e, sample.v, p.mu);
      if (p.freeze_conjugate) out.g = w.g;
      return out;
    }
  }
  throw std::logic_error("unknown algorithm");
}

FrequencyEstimate frequency_estimate(const AugmentedWeights& w, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double im_h = w.h.imag();

  bool valid = true;
  double sin_arg;
  if (w.g.real() == 0.0 && w.g.imag() == 0.0) {
    sin_arg = im_h;  // strictly-linear limit of the a(tau) g term
  } else {
    const double disc = im_h * im_h - std::norm(w.g);
    if (!(disc >= 0.0)) {
      valid = false;  // transient: clamp the discriminant at zero
      sin_arg = 0.0;
    } else {
      sin_arg = std::sqrt(disc);
    }
  }

  if (std::isnan(sin_arg)) return {sin_arg, false};
  if (sin_arg > 1.0 || sin_arg < -1.0) {
    valid = false;
    sin_arg = std::clamp(sin_arg, -1.0, 1.0);
  }

  const double f_hat = std::asin(sin_arg) / (2.0 * std::numbers::pi * dt);
  if (f_hat < 0.0) valid = false;  // valid estimates lie in [0, Nyquist)
  return {f_hat, valid};
}

std::vector<SingleRunRecord> run_single(AugmentedWeights w0, const FilterParams& p,
                                        std::span<const NoisyPair> stream, double dt,
                                        Algorithm alg) {
  p.validate();
  std::vector<SingleRunRecord> out;
  out.reserve(stream.size());
  AugmentedWeights w = w0;
  for (const NoisyPair& s : stream) {
    double e2 = 0.0;
    w = adapt_step(w, RegressorPair(s), p, alg, &e2);
    out.push_back({w, e2, frequency_estimate(w, dt)});
  }
  return out;
}

}  // namespace dfreq
