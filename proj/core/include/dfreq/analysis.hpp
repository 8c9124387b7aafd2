#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dfreq/metrics.hpp"
#include "dfreq/wlfilter.hpp"

namespace dfreq {

// 2x2 complex matrix, row major
struct Mat2c {
  cplx m00, m01, m10, m11;
};

// instantaneous total-correntropy objective exp(-|e|^2 / (2 sigma^2 D))
double instantaneous_cost(const AugmentedWeights& w, cplx v, cplx d, const FilterParams& p);

// Central finite differences of the instantaneous objective over the four
// real coordinates (Re h, Im h, Re g, Im g), assembled into the conjugate
// Wirtinger convention d/dw* = (d/dRe + j d/dIm) / 2. Verification oracle
// for damtcc_gradients; independent of the analytic formulas.
WlGradients finite_difference_gradients(const AugmentedWeights& w, cplx v, cplx d,
                                        const FilterParams& p, double step = 1e-6);

// Exact widely-linear weights from three consecutive clean samples:
// solves [v0 v0*; v1 v1*] [h g]^T = [v1 v2]^T. Throws on a singular
// system (purely real or zero streams).
AugmentedWeights solve_wl_weights(cplx v0, cplx v1, cplx v2);
AugmentedWeights solve_wl_weights(std::span<const cplx> stream);

// correntropy attenuation factor sigma^2 / (sigma^2 + sigma_i^2 / 2), in (0, 1]
double kappa(double sigma, double sigma_i2);

// sample mean of x x^H for the augmented regressor x = [v, v*]
Mat2c input_covariance(std::span<const cplx> voltages);

// eigenvalues of a Hermitian 2x2 matrix, (min, max)
std::pair<double, double> hermitian_eigenvalues(const Mat2c& m);

struct StabilityInputs {
  Mat2c r;               // input covariance
  double sigma = 1.0;    // kernel width
  double sigma_i2 = 0.0; // input noise variance
  double w_bar_norm2 = 0.0;  // |h0|^2 + |g0|^2 + gamma at the solution
};

// Step-size stability bound mu_max = 2 ||w_bar||^2 / (kappa^2 lambda(R)).
// The binding eigenvalue is lambda_max(R): the Hessian of the objective at
// the solution is -kappa^2 R / (2 sigma^2 ||w_bar||^2), negative definite,
// so its largest-magnitude eigenvalue comes from lambda_max. Requires R
// positive definite.
double stability_bound(const StabilityInputs& si);

struct NodeStats {
  int node = 0;
  double bias = 0.0;
  double variance = 0.0;
  std::size_t samples = 0;  // valid estimates in the window
  std::size_t invalid = 0;  // flagged rows excluded from the stats
};

// Steady-state statistics over the trailing `window` iterations, pooled
// across runs: bias = mean(f_hat) - f_true and the (n-1) sample variance,
// per node. Invalid rows are excluded and counted; an all-invalid window
// yields samples == 0 with NaN bias/variance. Rows are brought into a
// canonical order first, so any permutation of the input gives identical
// results.
std::vector<NodeStats> bias_variance(const MetricSeries& series, double f_true, long window);

}  // namespace dfreq
