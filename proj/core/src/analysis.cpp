#include "dfreq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfreq {

double instantaneous_cost(const AugmentedWeights& w, cplx v, cplx d, const FilterParams& p) {
  const double den = std::norm(w.h) + std::norm(w.g) + p.gamma;
  if (den == 0.0)
    throw std::domain_error("degenerate state: |h|^2 + |g|^2 + gamma is zero");
  const cplx e = prediction_error(d, w, v);
  return std::exp(-std::norm(e) / (2.0 * p.sigma * p.sigma * den));
}

WlGradients finite_difference_gradients(const AugmentedWeights& w, cplx v, cplx d,
                                        const FilterParams& p, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");

  // cost as a function of one perturbed real coordinate
  const auto cost_at = [&](int coord, double delta) {
    AugmentedWeights q = w;
    switch (coord) {
      case 0: q.h += cplx{delta, 0.0}; break;
      case 1: q.h += cplx{0.0, delta}; break;
      case 2: q.g += cplx{delta, 0.0}; break;
      case 3: q.g += cplx{0.0, delta}; break;
    }
    return instantaneous_cost(q, v, d, p);
  };
  double partial[4];
  for (int k = 0; k < 4; ++k)
    partial[k] = (cost_at(k, step) - cost_at(k, -step)) / (2.0 * step);

  return {0.5 * cplx{partial[0], partial[1]}, 0.5 * cplx{partial[2], partial[3]}};
}

AugmentedWeights solve_wl_weights(cplx v0, cplx v1, cplx v2) {
  const cplx det = v0 * std::conj(v1) - std::conj(v0) * v1;  // 2j Im(v0 v1*)
  const double scale = std::norm(v0) + std::norm(v1);
  if (std::abs(det) <= 1e-14 * std::max(scale, 1e-300))
    throw std::domain_error("singular system: samples carry no quadrature component");
  return {(v1 * std::conj(v1) - std::conj(v0) * v2) / det,
          (v0 * v2 - v1 * v1) / det};
}

AugmentedWeights solve_wl_weights(std::span<const cplx> stream) {
  if (stream.size() < 3)
    throw std::invalid_argument("three consecutive samples required");
  return solve_wl_weights(stream[0], stream[1], stream[2]);
}

double kappa(double sigma, double sigma_i2) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(sigma_i2 >= 0.0)) throw std::invalid_argument("sigma_i2 must be >= 0");
  const double s2 = sigma * sigma;
  return s2 / (s2 + sigma_i2 / 2.0);
}

Mat2c input_covariance(std::span<const cplx> voltages) {
  if (voltages.size() < 2)
    throw std::invalid_argument("at least two regressors required");
  double p = 0.0;
  cplx q{0.0, 0.0};
  for (cplx v : voltages) {
    p += std::norm(v);
    q += v * v;
  }
  const double inv = 1.0 / static_cast<double>(voltages.size());
  p *= inv;
  q *= inv;
  // E[x x^H] for x = [v, v*]: diagonal |v|^2, off-diagonal v^2 and its conjugate
  return {cplx{p, 0.0}, q, std::conj(q), cplx{p, 0.0}};
}

std::pair<double, double> hermitian_eigenvalues(const Mat2c& m) {
  const double a = m.m00.real();
  const double c = m.m11.real();
  const double mid = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(m.m01));
  return {mid - rad, mid + rad};
}

double stability_bound(const StabilityInputs& si) {
  if (!(si.w_bar_norm2 > 0.0))
    throw std::invalid_argument("w_bar_norm2 must be positive");
  const auto [lmin, lmax] = hermitian_eigenvalues(si.r);
  if (!(lmin > 0.0))
    throw std::invalid_argument("input covariance must be positive definite");
  const double k = kappa(si.sigma, si.sigma_i2);
  return 2.0 * si.w_bar_norm2 / (k * k * lmax);
}

std::vector<NodeStats> bias_variance(const MetricSeries& series, double f_true, long window) {
  if (series.empty()) throw std::invalid_argument("empty metric series");
  long max_iter = 0;
  int max_node = 0;
  for (const MetricRow& r : series) {
    max_iter = std::max(max_iter, r.iteration);
    max_node = std::max(max_node, r.node);
  }
  if (window <= 0 || window > max_iter + 1)
    throw std::invalid_argument("window must lie in [1, recorded length]");
  const long first = max_iter + 1 - window;

  // canonical order: results do not depend on how runs were interleaved
  std::vector<const MetricRow*> rows;
  rows.reserve(series.size());
  for (const MetricRow& r : series)
    if (r.iteration >= first) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const MetricRow* a, const MetricRow* b) {
    if (a->node != b->node) return a->node < b->node;
    if (a->run != b->run) return a->run < b->run;
    return a->iteration < b->iteration;
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<NodeStats> out(static_cast<std::size_t>(max_node) + 1);
  for (std::size_t l = 0; l < out.size(); ++l) out[l].node = static_cast<int>(l);

  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin;
    const int node = rows[begin]->node;
    while (end < rows.size() && rows[end]->node == node) ++end;

    NodeStats& st = out[static_cast<std::size_t>(node)];
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      if (!rows[k]->valid) {
        ++st.invalid;
        continue;
      }
      ++st.samples;
      sum += rows[k]->f_hat;
    }
    if (st.samples == 0) {
      st.bias = nan;
      st.variance = nan;
    } else {
      const double mean = sum / static_cast<double>(st.samples);
      st.bias = mean - f_true;
      double ss = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        if (!rows[k]->valid) continue;
        const double dev = rows[k]->f_hat - mean;
        ss += dev * dev;
      }
      st.variance = st.samples > 1 ? ss / static_cast<double>(st.samples - 1) : 0.0;
    }
    begin = end;
  }
  return out;
}

}  // namespace dfreq
